"""Append-only resolution proof DAG shared by the solver and the interpolator.

Nodes are either labeled input clauses (label A or B) or binary resolvents
(left child holds the pivot positively, right child negatively).  Resolvent
clauses are not stored; they are recomputed on demand, and check_refutation
always recomputes them from the children rather than trusting any cache.
Node ids are dense and children always precede parents.
"""

from __future__ import annotations

from array import array
from typing import Iterator

from .cnf import Clause, is_tautology, normalize_clause

LABEL_A = "A"
LABEL_B = "B"


class ProofError(ValueError):
    pass


class ProofStore:
    def __init__(self):
        # Parallel arrays; pivot < 0 marks an input node.
        self._left = array("i")
        self._right = array("i")
        self._pivot = array("i")
        self._inputs: dict[int, tuple[Clause, str]] = {}
        # Clause cache for inputs, validated resolvents, and trusted hints
        # from the solver.  check_refutation never reads it.
        self._clauses: dict[int, Clause] = {}

    def __len__(self) -> int:
        return len(self._pivot)

    def is_input(self, node_id: int) -> bool:
        self._check_id(node_id)
        return self._pivot[node_id] < 0

    def node(self, node_id: int):
        """('I', clause, label) for inputs, ('R', left, right, pivot) otherwise."""
        self._check_id(node_id)
        if self._pivot[node_id] < 0:
            clause, label = self._inputs[node_id]
            return ("I", clause, label)
        return ("R", self._left[node_id], self._right[node_id], self._pivot[node_id])

    def _check_id(self, node_id: int):
        if not 0 <= node_id < len(self._pivot):
            raise ProofError(f"dangling proof node id {node_id}")

    def add_input(self, clause, label: str) -> int:
        if label not in (LABEL_A, LABEL_B):
            raise ProofError(f"bad label {label!r}")
        norm = normalize_clause(clause)
        if is_tautology(norm):
            raise ProofError(f"tautological input clause {norm}")
        node_id = len(self._pivot)
        self._left.append(-1)
        self._right.append(-1)
        self._pivot.append(-1)
        self._inputs[node_id] = (norm, label)
        self._clauses[node_id] = norm
        return node_id

    def add_resolvent(self, left: int, right: int, pivot: int) -> int:
        """Validating construction; use _append_resolvent on trusted paths."""
        if pivot < 1:
            raise ProofError(f"pivot must be a variable index, got {pivot}")
        lc = self.clause_of(left)
        rc = self.clause_of(right)
        if pivot not in lc:
            raise ProofError(f"pivot {pivot} not positive in left clause {lc}")
        if -pivot not in rc:
            raise ProofError(f"pivot {pivot} not negative in right clause {rc}")
        resolvent = frozenset(lc) - {pivot} | (frozenset(rc) - {-pivot})
        if is_tautology(resolvent):
            raise ProofError(f"tautological resolvent from {lc} and {rc} on {pivot}")
        node_id = self._append_resolvent(left, right, pivot)
        self._clauses[node_id] = normalize_clause(resolvent)
        return node_id

    def _append_resolvent(self, left: int, right: int, pivot: int) -> int:
        node_id = len(self._pivot)
        if not (0 <= left < node_id and 0 <= right < node_id):
            raise ProofError("resolvent children must already exist")
        self._left.append(left)
        self._right.append(right)
        self._pivot.append(pivot)
        return node_id

    def note_clause(self, node_id: int, clause: Clause):
        """Cache a clause known by construction (trusted, solver fast path)."""
        self._check_id(node_id)
        self._clauses[node_id] = clause

    def clause_of(self, node_id: int) -> Clause:
        """The clause a node derives, computed from children where needed."""
        cached = self._clauses.get(node_id)
        if cached is not None:
            return cached
        self._check_id(node_id)
        computed: dict[int, frozenset] = {}
        stack = [node_id]
        while stack:
            nid = stack[-1]
            if nid in computed or nid in self._clauses:
                stack.pop()
                continue
            left, right, pivot = self._left[nid], self._right[nid], self._pivot[nid]
            child_clauses = []
            missing = False
            for child in (left, right):
                known = self._clauses.get(child)
                if known is None:
                    known = computed.get(child)
                if known is None:
                    stack.append(child)
                    missing = True
                else:
                    child_clauses.append(frozenset(known))
            if missing:
                continue
            stack.pop()
            computed[nid] = child_clauses[0] - {pivot} | (child_clauses[1] - {-pivot})
        return normalize_clause(computed[node_id])

    def reachable(self, root: int) -> list[int]:
        """Node ids reachable from root, ascending (children before parents)."""
        self._check_id(root)
        marked = bytearray(len(self._pivot))
        stack = [root]
        marked[root] = 1
        while stack:
            nid = stack.pop()
            if self._pivot[nid] >= 0:
                for child in (self._left[nid], self._right[nid]):
                    if not marked[child]:
                        marked[child] = 1
                        stack.append(child)
        return [i for i, m in enumerate(marked) if m]

    def reachable_inputs(self, root: int) -> list[int]:
        return [i for i in self.reachable(root) if self._pivot[i] < 0]

    def check_refutation(self, root: int) -> bool:
        """True iff root derives the empty clause and every reachable
        resolvent is a genuine non-tautological resolution of its children.
        Clauses are recomputed bottom-up; nothing stored is trusted."""
        clauses: dict[int, frozenset] = {}
        for nid in self.reachable(root):
            if self._pivot[nid] < 0:
                clauses[nid] = frozenset(self._inputs[nid][0])
                continue
            left, right, pivot = self._left[nid], self._right[nid], self._pivot[nid]
            lc, rc = clauses[left], clauses[right]
            if pivot not in lc or -pivot not in rc:
                return False
            resolvent = lc - {pivot} | (rc - {-pivot})
            if is_tautology(resolvent):
                return False
            clauses[nid] = resolvent
        return not clauses[root]

    def dump(self, root: int | None = None) -> str:
        """Debug listing, one node per line:
        ``<id> I <label> <lits> 0`` or ``<id> R <left> <right> <pivot> <lits> 0``.
        """
        ids: Iterator[int] = iter(self.reachable(root)) if root is not None else iter(
            range(len(self._pivot))
        )
        lines = []
        for nid in ids:
            lits = [str(l) for l in self.clause_of(nid)]
            if self._pivot[nid] < 0:
                _, label = self._inputs[nid]
                lines.append(" ".join([str(nid), "I", label, *lits, "0"]))
            else:
                lines.append(
                    " ".join(
                        [
                            str(nid),
                            "R",
                            str(self._left[nid]),
                            str(self._right[nid]),
                            str(self._pivot[nid]),
                            *lits,
                            "0",
                        ]
                    )
                )
        return "\n".join(lines) + ("\n" if lines else "")
