"""CDCL solver with watched literals, assumptions, and resolution proof logging.

Design notes, fixed for reproducibility:

* branching is activity-driven (VSIDS style) with ties broken on the lowest
  variable index, default polarity false, no phase saving;
* restarts follow the Luby sequence with a unit of 100 conflicts;
* learnt clauses are never deleted, so proof nodes stay valid across
  incremental calls;
* every learnt clause carries a proof chain built only from clause nodes
  (label A), never from assumption literals, which is what keeps learnt
  clauses sound premises under any future assumptions.

Conflict analysis is First-UIP.  Literals already falsified at level 0 are
resolved out of the learnt clause (their reason chains are part of the logged
derivation), so each learnt clause's proof node derives exactly that clause.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from heapq import heappop, heappush

from .cnf import Lit, is_tautology, normalize_clause
from .proof import LABEL_A, LABEL_B, ProofStore

SENTINEL = -1  # returned by add_clause for ignored clauses

_RESCALE = 1e100
_ACT_DECAY = 0.95


@dataclass(frozen=True)
class Sat:
    model: dict[int, bool]


@dataclass(frozen=True)
class Unsat:
    refutation: int


@dataclass(frozen=True)
class UnsatUnderAssumptions:
    conflict_assumptions: tuple[Lit, ...]
    refutation: int


SolveOutcome = Sat | Unsat | UnsatUnderAssumptions


class BudgetExceeded(Exception):
    """Raised when a solve call overruns its deadline."""


def luby(i: int) -> int:
    """The i-th term of the Luby restart sequence (1-indexed)."""
    while True:
        k = 1
        while (1 << k) - 1 < i:
            k += 1
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1


class Solver:
    def __init__(self, proof: ProofStore | None = None, restart_unit: int = 100):
        self.proof = proof if proof is not None else ProofStore()
        self.restart_unit = restart_unit
        self.clauses: list[list[Lit]] = []  # positions 0/1 are the watched pair
        self.clause_node: list[int] = []
        self.unsat_node: int | None = None
        self.trail: list[Lit] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.n_conflicts = 0
        self.learn_hook = None  # callable(learnt_lits, value_of) for tests
        cap = 64
        self._cap = cap
        self._vals = [0] * (2 * cap + 1)  # index _cap + lit: 1 true, -1 false
        self._watches: list[list[int]] = [[] for _ in range(2 * cap + 1)]
        self._level = [0] * (cap + 1)
        self._reason = [-1] * (cap + 1)
        self._tpos = [0] * (cap + 1)
        self._activity = [0.0] * (cap + 1)
        self._seen = bytearray(cap + 1)
        self._active = bytearray(cap + 1)
        self._active_list: list[int] = []
        self._heap: list[tuple[float, int]] = []
        self._var_inc = 1.0
        self._last: SolveOutcome | None = None

    # ------------------------------------------------------------------
    # variable bookkeeping

    def _grow(self, var: int):
        cap = self._cap
        new_cap = max(2 * cap, var)
        old_vals, off = self._vals, cap
        vals = [0] * (2 * new_cap + 1)
        watches: list[list[int]] = [[] for _ in range(2 * new_cap + 1)]
        for lit in range(-cap, cap + 1):
            vals[new_cap + lit] = old_vals[off + lit]
            watches[new_cap + lit] = self._watches[off + lit]
        extra = new_cap - cap
        self._vals = vals
        self._watches = watches
        self._level.extend([0] * extra)
        self._reason.extend([-1] * extra)
        self._tpos.extend([0] * extra)
        self._activity.extend([0.0] * extra)
        self._seen.extend(bytes(extra))
        self._active.extend(bytes(extra))
        self._cap = new_cap

    def _activate(self, var: int):
        if var > self._cap:
            self._grow(var)
        if not self._active[var]:
            self._active[var] = 1
            self._active_list.append(var)
            heappush(self._heap, (-self._activity[var], var))

    def value(self, lit: Lit) -> int:
        """1 if lit is true, -1 if false, 0 if unassigned."""
        if abs(lit) > self._cap:
            return 0
        return self._vals[self._cap + lit]

    @property
    def num_vars(self) -> int:
        return len(self._active_list)

    # ------------------------------------------------------------------
    # clause input

    def add_clause(self, lits, label: str = LABEL_A) -> int:
        """Register a clause (at decision level 0) and propagate its units.

        Tautologies are ignored; adding to an already-refuted solver is a
        no-op.  Both return the sentinel id.
        """
        if self.unsat_node is not None:
            return SENTINEL
        if self.trail_lim:
            raise ValueError("clauses may only be added at decision level 0")
        norm = normalize_clause(lits)
        if is_tautology(norm):
            return SENTINEL
        for l in norm:
            self._activate(abs(l))
        node = self.proof.add_input(norm, label)
        ci = len(self.clauses)
        off = self._cap
        vals = self._vals
        nonfalse = [l for l in norm if vals[off + l] >= 0]
        ordered = nonfalse + [l for l in norm if vals[off + l] < 0]
        self.clauses.append(ordered)
        self.clause_node.append(node)
        if not norm:
            self.unsat_node = node
        elif not nonfalse:
            self._refute_at_level0(ci)
        elif len(nonfalse) == 1:
            l = nonfalse[0]
            if vals[off + l] == 0:
                self._enqueue(l, ci)
                confl = self._propagate()
                if confl >= 0:
                    self._refute_at_level0(confl)
        else:
            self._watches[off + ordered[0]].append(ci)
            self._watches[off + ordered[1]].append(ci)
        return ci

    # ------------------------------------------------------------------
    # trail

    def _enqueue(self, lit: Lit, reason: int):
        v = lit if lit > 0 else -lit
        off = self._cap
        self._vals[off + lit] = 1
        self._vals[off - lit] = -1
        self._level[v] = len(self.trail_lim)
        self._reason[v] = reason
        self._tpos[v] = len(self.trail)
        self.trail.append(lit)

    def _backtrack(self, level: int):
        if len(self.trail_lim) <= level:
            return
        limit = self.trail_lim[level]
        off = self._cap
        vals = self._vals
        heap = self._heap
        activity = self._activity
        for lit in self.trail[limit:]:
            v = lit if lit > 0 else -lit
            vals[off + lit] = 0
            vals[off - lit] = 0
            heappush(heap, (-activity[v], v))
        del self.trail[limit:]
        del self.trail_lim[level:]
        self.qhead = limit

    def _propagate(self) -> int:
        """Unit propagation; returns the index of a falsified clause, or -1."""
        vals = self._vals
        off = self._cap
        watches = self._watches
        clauses = self.clauses
        trail = self.trail
        level = self._level
        reason = self._reason
        tpos = self._tpos
        dl = len(self.trail_lim)
        qhead = self.qhead
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            ws = watches[off - p]
            if not ws:
                continue
            np = -p
            i = j = 0
            end = len(ws)
            while i < end:
                ci = ws[i]
                i += 1
                lits = clauses[ci]
                if lits[0] == np:
                    lits[0] = lits[1]
                    lits[1] = np
                w0 = lits[0]
                if vals[off + w0] == 1:
                    ws[j] = ci
                    j += 1
                    continue
                n = len(lits)
                k = 2
                while k < n:
                    if vals[off + lits[k]] >= 0:
                        break
                    k += 1
                if k < n:
                    lk = lits[k]
                    lits[1] = lk
                    lits[k] = np
                    watches[off + lk].append(ci)
                    continue
                ws[j] = ci
                j += 1
                if vals[off + w0] == -1:
                    while i < end:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    self.qhead = qhead
                    return ci
                v = w0 if w0 > 0 else -w0
                vals[off + w0] = 1
                vals[off - w0] = -1
                level[v] = dl
                reason[v] = ci
                tpos[v] = len(trail)
                trail.append(w0)
            del ws[j:]
        self.qhead = qhead
        return -1

    # ------------------------------------------------------------------
    # activity

    def _bump(self, var: int):
        act = self._activity[var] + self._var_inc
        self._activity[var] = act
        if act > _RESCALE:
            scale = 1.0 / _RESCALE
            for v in self._active_list:
                self._activity[v] *= scale
            self._var_inc *= scale
            off = self._cap
            vals = self._vals
            self._heap = []
            for v in self._active_list:
                if vals[off + v] == 0:
                    heappush(self._heap, (-self._activity[v], v))
        elif self._vals[self._cap + var] == 0:
            heappush(self._heap, (-act, var))

    def _pick_branch_var(self) -> int:
        vals = self._vals
        off = self._cap
        activity = self._activity
        heap = self._heap
        while heap:
            negact, v = heappop(heap)
            if vals[off + v] == 0 and activity[v] == -negact:
                return v
        raise RuntimeError("internal: decision heap exhausted with unassigned vars")

    # ------------------------------------------------------------------
    # conflict analysis

    def _chain_to_node(self, start_clause: int, steps) -> int:
        """Materialize a recorded resolution chain as proof nodes.

        Each step is (antecedent clause index, trail literal t); the running
        clause contains -t and the antecedent contains t, so the orientation
        (pivot positive on the left) follows from the sign of t.
        """
        proof = self.proof
        append = proof._append_resolvent
        clause_node = self.clause_node
        node = clause_node[start_clause]
        for ci, t in steps:
            rnode = clause_node[ci]
            if t > 0:
                node = append(rnode, node, t)
            else:
                node = append(node, rnode, -t)
        return node

    def _sweep_level0(self, steps, touched, remaining, start_pos):
        """Resolve marked level-0 literals out, walking the trail backwards."""
        seen = self._seen
        trail = self.trail
        reason = self._reason
        clauses = self.clauses
        pos = start_pos
        while remaining:
            t = trail[pos]
            pos -= 1
            v = t if t > 0 else -t
            if not seen[v]:
                continue
            seen[v] = 0
            remaining -= 1
            rci = reason[v]
            steps.append((rci, t))
            for q in clauses[rci]:
                if q != t:
                    u = q if q > 0 else -q
                    if not seen[u]:
                        seen[u] = 1
                        touched.append(u)
                        remaining += 1

    def _refute_at_level0(self, confl: int):
        """Derive the empty clause from a conflict at decision level 0."""
        seen = self._seen
        steps: list[tuple[int, int]] = []
        touched: list[int] = []
        remaining = 0
        for q in self.clauses[confl]:
            v = q if q > 0 else -q
            if not seen[v]:
                seen[v] = 1
                touched.append(v)
                remaining += 1
        self._sweep_level0(steps, touched, remaining, len(self.trail) - 1)
        node = self._chain_to_node(confl, steps)
        self.proof.note_clause(node, ())
        for v in touched:
            seen[v] = 0
        self.unsat_node = node

    def _analyze(self, confl: int):
        """First-UIP analysis; returns (learnt lits, backjump level, proof node).

        learnt[0] is the asserting literal; learnt[1] (when present) is a
        literal from the backjump level, so the pair is watchable as-is.
        """
        clauses = self.clauses
        level = self._level
        reason = self._reason
        trail = self.trail
        seen = self._seen
        cur_level = len(self.trail_lim)
        learnt: list[Lit] = []
        l0_count = 0
        steps: list[tuple[int, int]] = []
        touched: list[int] = []
        path = 0
        p = 0
        idx = len(trail) - 1
        ci = confl
        while True:
            if p:
                steps.append((ci, p))
            for q in clauses[ci]:
                if q == p:
                    continue
                v = q if q > 0 else -q
                if not seen[v]:
                    seen[v] = 1
                    touched.append(v)
                    lv = level[v]
                    if lv >= cur_level:
                        path += 1
                        self._bump(v)
                    elif lv > 0:
                        learnt.append(q)
                        self._bump(v)
                    else:
                        l0_count += 1
            while True:
                t = trail[idx]
                v = t if t > 0 else -t
                if seen[v] and level[v] >= cur_level:
                    break
                idx -= 1
            p = t
            ci = reason[v]
            seen[v] = 0
            path -= 1
            idx -= 1
            if path == 0:
                break
        if l0_count:
            limit = self.trail_lim[0]
            self._sweep_level0(steps, touched, l0_count, limit - 1)
        learnt.insert(0, -p)
        node = self._chain_to_node(confl, steps)
        self.proof.note_clause(node, normalize_clause(learnt))
        for v in touched:
            seen[v] = 0
        if len(learnt) == 1:
            bt = 0
        else:
            best = 1
            for k in range(2, len(learnt)):
                if level[abs(learnt[k])] > level[abs(learnt[best])]:
                    best = k
            learnt[1], learnt[best] = learnt[best], learnt[1]
            bt = level[abs(learnt[1])]
        return learnt, bt, node

    def _analyze_final(self, p: Lit) -> UnsatUnderAssumptions:
        """Assumption p is falsified: derive the clause over the negations of
        the assumptions responsible (p's own negation included)."""
        vp = abs(p)
        rci = self._reason[vp]
        if rci < 0:
            raise RuntimeError("internal: falsified assumption without a reason")
        seen = self._seen
        steps: list[tuple[int, int]] = []
        touched: list[int] = []
        conflicting = [p]
        remaining = 0
        for q in self.clauses[rci]:
            if q == -p:
                continue
            v = q if q > 0 else -q
            if not seen[v]:
                seen[v] = 1
                touched.append(v)
                remaining += 1
        trail = self.trail
        reason = self._reason
        clauses = self.clauses
        pos = self._tpos[vp] - 1
        while remaining:
            t = trail[pos]
            pos -= 1
            v = t if t > 0 else -t
            if not seen[v]:
                continue
            seen[v] = 0
            remaining -= 1
            r = reason[v]
            if r < 0:
                conflicting.append(t)  # an assumption decision
            else:
                steps.append((r, t))
                for q in clauses[r]:
                    if q != t:
                        u = q if q > 0 else -q
                        if not seen[u]:
                            seen[u] = 1
                            touched.append(u)
                            remaining += 1
        for v in touched:
            seen[v] = 0
        node = self._chain_to_node(rci, steps)
        self.proof.note_clause(node, normalize_clause(-a for a in conflicting))
        return UnsatUnderAssumptions(tuple(conflicting), node)

    # ------------------------------------------------------------------
    # search

    def _install_learnt(self, lits: list[Lit], node: int) -> int:
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.clause_node.append(node)
        if len(lits) >= 2:
            off = self._cap
            self._watches[off + lits[0]].append(ci)
            self._watches[off + lits[1]].append(ci)
        return ci

    def solve(self, assumptions=(), deadline: float | None = None) -> SolveOutcome:
        """Decide the clause database under the given assumption literals.

        Returns Sat with a model over all solver variables, Unsat if the
        database alone is contradictory, or UnsatUnderAssumptions with a
        conflicting subset of the assumptions.  Learnt clauses and proof
        nodes persist across calls.  Raises BudgetExceeded past ``deadline``
        (a time.monotonic() timestamp).
        """
        if self.unsat_node is not None:
            self._last = Unsat(self.unsat_node)
            return self._last
        assumptions = list(assumptions)
        aset = set(assumptions)
        if 0 in aset or any(-l in aset for l in aset):
            raise ValueError(f"inconsistent assumption list {assumptions}")
        for l in assumptions:
            self._activate(abs(l))
        self._backtrack(0)
        restart_idx = 1
        restart_limit = self.restart_unit * luby(restart_idx)
        conflicts_here = 0
        decisions = 0
        n_active = len(self._active_list)
        while True:
            confl = self._propagate()
            if confl >= 0:
                self.n_conflicts += 1
                conflicts_here += 1
                if deadline is not None and time.monotonic() > deadline:
                    self._backtrack(0)
                    raise BudgetExceeded
                if not self.trail_lim:
                    self._refute_at_level0(confl)
                    self._last = Unsat(self.unsat_node)
                    return self._last
                learnt, bt, node = self._analyze(confl)
                if self.learn_hook is not None:
                    self.learn_hook(tuple(learnt), self.value)
                self._backtrack(bt)
                ci = self._install_learnt(learnt, node)
                self._enqueue(learnt[0], ci)
                self._var_inc /= _ACT_DECAY
                if conflicts_here >= restart_limit:
                    conflicts_here = 0
                    restart_idx += 1
                    restart_limit = self.restart_unit * luby(restart_idx)
                    self._backtrack(0)
                continue
            next_lit = 0
            while len(self.trail_lim) < len(assumptions):
                a = assumptions[len(self.trail_lim)]
                va = self.value(a)
                if va == 1:
                    self.trail_lim.append(len(self.trail))  # already true: dummy level
                elif va == -1:
                    out = self._analyze_final(a)
                    self._backtrack(0)
                    self._last = out
                    return out
                else:
                    next_lit = a
                    break
            if next_lit == 0:
                if len(self.trail) == n_active:
                    model = self._snapshot_model()
                    self._verify_model(model)
                    self._backtrack(0)
                    self._last = Sat(model)
                    return self._last
                decisions += 1
                if (
                    deadline is not None
                    and not decisions & 511
                    and time.monotonic() > deadline
                ):
                    self._backtrack(0)
                    raise BudgetExceeded
                next_lit = -self._pick_branch_var()  # default polarity false
            self.trail_lim.append(len(self.trail))
            self._enqueue(next_lit, -1)

    def _snapshot_model(self) -> dict[int, bool]:
        off = self._cap
        vals = self._vals
        return {v: vals[off + v] == 1 for v in self._active_list}

    def _verify_model(self, model: dict[int, bool]):
        for lits in self.clauses:
            if lits and not any(model[abs(l)] == (l > 0) for l in lits):
                raise RuntimeError(f"internal: model fails clause {sorted(lits)}")

    # ------------------------------------------------------------------
    # labeled refutations for interpolation

    def labeled_refutation(self, b_units) -> int:
        """Extend the last unsatisfiable outcome to an empty-clause proof in
        which the B-labeled leaves are unit clauses over ``b_units`` and all
        other leaves are this solver's A-labeled inputs."""
        last = self._last
        if last is None or isinstance(last, Sat):
            raise ValueError("labeled_refutation requires a preceding unsat solve")
        if isinstance(last, Unsat):
            return last.refutation
        missing = set(last.conflict_assumptions) - set(b_units)
        if missing:
            raise ValueError(f"conflict assumptions {missing} not among b_units")
        node = last.refutation
        for a in last.conflict_assumptions:
            unit = self.proof.add_input((a,), LABEL_B)
            if a > 0:
                node = self.proof.add_resolvent(unit, node, a)
            else:
                node = self.proof.add_resolvent(node, unit, -a)
        return node
