"""Hash-consed boolean circuits for compact interpolant storage.

The store keeps binary AND nodes with complement edges (AIG style), which is
all the interpolation rules need: AND, OR via De Morgan, and negation as an
O(1) edge flip.  A reference is ``node_id * 2 + negated``, so structurally
equal constructions always return the identical integer, and recurring
substructure across interpolants is shared.

Constructor-level simplifications (and their OR duals via the encoding):
And(x, true) = x, And(x, false) = false, And(x, x) = x, And(x, ~x) = false.
"""

from __future__ import annotations

from itertools import count
from typing import Iterator, Mapping

from .cnf import Clause, Lit

RbcRef = int

TRUE = 0  # reference to the constant-true node
FALSE = 1  # its complement edge


def mk_not(ref: RbcRef) -> RbcRef:
    return ref ^ 1


def is_negated(ref: RbcRef) -> bool:
    return bool(ref & 1)


class RbcStore:
    def __init__(self):
        # Node 0 is the true constant; kinds are 'T', 'V' (var), 'A' (and).
        self._kind: list[str] = ["T"]
        self._a: list[int] = [0]  # var index for 'V', left child ref for 'A'
        self._b: list[int] = [0]  # right child ref for 'A'
        self._var_node: dict[int, int] = {}
        self._and_node: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self._kind)

    def node(self, node_id: int):
        """('T',) | ('V', var) | ('A', left_ref, right_ref)."""
        kind = self._kind[node_id]
        if kind == "T":
            return ("T",)
        if kind == "V":
            return ("V", self._a[node_id])
        return ("A", self._a[node_id], self._b[node_id])

    def mk_true(self) -> RbcRef:
        return TRUE

    def mk_false(self) -> RbcRef:
        return FALSE

    def mk_var(self, var: int) -> RbcRef:
        if var < 1:
            raise ValueError(f"variable index must be positive, got {var}")
        node = self._var_node.get(var)
        if node is None:
            node = len(self._kind)
            self._kind.append("V")
            self._a.append(var)
            self._b.append(0)
            self._var_node[var] = node
        return node << 1

    def mk_lit(self, lit: Lit) -> RbcRef:
        ref = self.mk_var(abs(lit))
        return ref if lit > 0 else ref ^ 1

    def mk_and(self, a: RbcRef, b: RbcRef) -> RbcRef:
        if a == FALSE or b == FALSE or a == (b ^ 1):
            return FALSE
        if a == TRUE:
            return b
        if b == TRUE or a == b:
            return a
        if a > b:
            a, b = b, a
        node = self._and_node.get((a, b))
        if node is None:
            node = len(self._kind)
            self._kind.append("A")
            self._a.append(a)
            self._b.append(b)
            self._and_node[(a, b)] = node
        return node << 1

    def mk_or(self, a: RbcRef, b: RbcRef) -> RbcRef:
        return self.mk_and(a ^ 1, b ^ 1) ^ 1

    def evaluate(self, ref: RbcRef, assignment: Mapping[int, bool]) -> bool:
        """Standard boolean semantics; every variable under ref must be assigned."""
        values: dict[int, bool] = {0: True}
        stack = [ref >> 1]
        while stack:
            node = stack[-1]
            if node in values:
                stack.pop()
                continue
            kind = self._kind[node]
            if kind == "V":
                var = self._a[node]
                if var not in assignment:
                    raise ValueError(f"variable {var} unassigned during evaluation")
                values[node] = assignment[var]
                stack.pop()
                continue
            la, lb = self._a[node], self._b[node]
            missing = [c >> 1 for c in (la, lb) if (c >> 1) not in values]
            if missing:
                stack.extend(missing)
                continue
            va = values[la >> 1] ^ bool(la & 1)
            vb = values[lb >> 1] ^ bool(lb & 1)
            values[node] = va and vb
            stack.pop()
        return values[ref >> 1] ^ bool(ref & 1)

    def _reachable(self, ref: RbcRef) -> list[int]:
        seen = {ref >> 1}
        stack = [ref >> 1]
        order = []
        while stack:
            node = stack.pop()
            order.append(node)
            if self._kind[node] == "A":
                for child in (self._a[node] >> 1, self._b[node] >> 1):
                    if child not in seen:
                        seen.add(child)
                        stack.append(child)
        return order

    def vars(self, ref: RbcRef) -> frozenset[int]:
        return frozenset(
            self._a[n] for n in self._reachable(ref) if self._kind[n] == "V"
        )

    def dag_size(self, ref: RbcRef) -> int:
        """Number of distinct store nodes reachable from ref."""
        return len(self._reachable(ref))

    def to_cnf_tseitin(
        self, ref: RbcRef, fresh: Iterator[int]
    ) -> tuple[list[Clause], Lit]:
        """Lower a circuit to clauses plus a root literal.

        ``fresh`` yields auxiliary variable indices, which must be strictly
        above every variable in use; each AND node costs one auxiliary and
        three clauses.  Leaves short-circuit to their own literal with no
        clauses.  The conjunction of the clauses with the root literal
        asserted is equisatisfiable with the circuit.
        """
        top = ref >> 1
        kind = self._kind[top]
        if kind == "T":
            aux = self._take_fresh(fresh, 0)
            return [(aux if ref == TRUE else -aux,)], aux
        if kind == "V":
            var = self._a[top]
            return [], (var if not ref & 1 else -var)
        max_used = max(self.vars(ref))
        nodes = [n for n in sorted(self._reachable(ref)) if self._kind[n] == "A"]
        aux_of: dict[int, int] = {}
        for n in nodes:
            aux = self._take_fresh(fresh, max_used)
            max_used = aux
            aux_of[n] = aux

        def lit_of(r: RbcRef) -> Lit:
            node = r >> 1
            base = self._a[node] if self._kind[node] == "V" else aux_of[node]
            return -base if r & 1 else base

        clauses: list[Clause] = []
        for n in nodes:
            a = aux_of[n]
            x = lit_of(self._a[n])
            y = lit_of(self._b[n])
            clauses.append((-a, x))
            clauses.append((-a, y))
            clauses.append((a, -x, -y))
        return clauses, lit_of(ref)

    @staticmethod
    def _take_fresh(fresh: Iterator[int], floor: int) -> int:
        aux = next(fresh)
        if aux <= floor:
            raise ValueError(
                f"fresh variable {aux} collides with variables in use (max {floor})"
            )
        return aux

    def to_dot(self, ref: RbcRef) -> str:
        """Graphviz rendering of the circuit under ref, for debugging."""
        lines = ["digraph rbc {"]
        lines.append(f'  root [shape=point]; root -> n{ref >> 1}'
                     f'{" [style=dotted]" if ref & 1 else ""};')
        for n in sorted(self._reachable(ref)):
            kind = self._kind[n]
            if kind == "T":
                lines.append(f'  n{n} [label="1" shape=box];')
            elif kind == "V":
                lines.append(f'  n{n} [label="x{self._a[n]}"];')
            else:
                lines.append(f'  n{n} [label="and"];')
                for child in (self._a[n], self._b[n]):
                    style = " [style=dotted]" if child & 1 else ""
                    lines.append(f"  n{n} -> n{child >> 1}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"
