"""Model reconciliation across lazy partitions via Craig interpolants.

The loop maintains a global formula G over the decomposition's shared
variables (plus Tseitin auxiliaries).  Each round: solve G and read off a
total shared-variable model m (unconstrained variables default to false);
try to extend m into every partition by solving it under m as assumptions;
for every partition that refuses, extract an interpolant from the labeled
refutation of (partition and m) and conjoin it to G.  A round with no
refusals assembles and verifies a full model; G becoming unsatisfiable
proves the input unsatisfiable.

Interpolants from all failing partitions of a round are conjoined before G
is re-solved, in ascending partition order, and all solvers are incremental
across rounds.  Everything is deterministic unless a seeded random
completion for unconstrained shared variables is requested.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import count
from typing import Callable

from .cnf import Clause, Formula, Lit, eval_formula
from .decomp import Decomposition, decompose_lazy
from .itp import ItpSystem, interpolant_from_proof
from .proof import LABEL_A, ProofStore
from .rbc import RbcRef, RbcStore
from .solver import BudgetExceeded, Sat, Solver

DEFAULT_MAX_ROUNDS = 100_000


@dataclass(frozen=True)
class InterpolantRecord:
    """One interpolant as handed to G, with its refutation's leaf context."""

    round: int
    partition: int
    ref: RbcRef
    rbc: RbcStore
    a_leaves: tuple[Clause, ...]
    b_leaves: tuple[Clause, ...]


@dataclass
class RoundRecord:
    round: int
    partition: int
    seconds: float
    proof_nodes: int
    itp_nodes: int
    g_clauses: int


@dataclass
class ReconcileStats:
    rounds: int = 0
    g_solves: int = 0
    g_clause_count: int = 0
    peak_itp_nodes: int = 0
    interpolants: int = 0
    wall_seconds: float = 0.0
    records: list[RoundRecord] = field(default_factory=list)


@dataclass
class ReconcileResult:
    verdict: str  # "SAT" | "UNSAT" | "UNKNOWN"
    model: dict[int, bool] | None
    stats: ReconcileStats
    exhausted: str | None = None  # "rounds" | "time" when verdict is UNKNOWN
    g_proof: ProofStore | None = None
    g_refutation: int | None = None


def assemble_model(
    m: dict[int, bool],
    extensions: dict[int, dict[int, bool]],
    decomposition: Decomposition,
    unused_value: bool = False,
) -> dict[int, bool]:
    """Merge the shared model with each partition's private extension.

    Extensions must agree with m on shared variables (the assumption
    mechanism guarantees it; disagreement means a bug, not an input error).
    Variables in no partition default to ``unused_value``.
    """
    model = dict(m)
    for i, ext in extensions.items():
        part = decomposition.partitions[i]
        for v in part.vars:
            if v in m:
                if ext[v] != m[v]:
                    raise RuntimeError(
                        f"internal: partition {i} extension disagrees on shared var {v}"
                    )
            else:
                model[v] = ext[v]
    for v in range(1, decomposition.num_vars + 1):
        model.setdefault(v, unused_value)
    return model


def reconcile(
    f: Formula,
    k: int,
    system: ItpSystem = ItpSystem.MCMILLAN,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    timeout: float | None = None,
    completion_seed: int | None = None,
    on_interpolant: Callable[[InterpolantRecord], None] | None = None,
    on_round: Callable[[int, dict[int, bool], list[Clause]], None] | None = None,
) -> ReconcileResult:
    """Decide f by reconciling k lazy partitions; see the module docstring.

    ``on_interpolant`` observes every interpolant conjoined to G;
    ``on_round`` observes (round index, shared model, G's clause list so far)
    after each round's refinements.  Both are for instrumentation and tests.
    """
    t_start = time.monotonic()
    deadline = t_start + timeout if timeout is not None else None
    decomposition = decompose_lazy(f, k)
    stats = ReconcileStats()

    def finish(result: ReconcileResult) -> ReconcileResult:
        stats.wall_seconds = time.monotonic() - t_start
        return result

    def exhausted(kind: str) -> ReconcileResult:
        return finish(ReconcileResult("UNKNOWN", None, stats, exhausted=kind))

    rbc = RbcStore()
    g = Solver()
    g_clauses: list[Clause] = []
    parts: list[Solver] = []
    for part in decomposition.partitions:
        s = Solver()
        for c in part.clauses:
            s.add_clause(c, LABEL_A)
        parts.append(s)
    fresh = count(f.num_vars + 1)
    shared_sorted = sorted(decomposition.shared_vars)
    part_shared = [
        sorted(part.vars & decomposition.shared_vars)
        for part in decomposition.partitions
    ]
    rng = random.Random(completion_seed) if completion_seed is not None else None

    for round_idx in range(max_rounds):
        stats.rounds = round_idx + 1
        try:
            g_out = g.solve(deadline=deadline)
        except BudgetExceeded:
            return exhausted("time")
        stats.g_solves += 1
        if not isinstance(g_out, Sat):
            return finish(
                ReconcileResult(
                    "UNSAT",
                    None,
                    stats,
                    g_proof=g.proof,
                    g_refutation=g_out.refutation,
                )
            )
        g_model = g_out.model
        m = {}
        for v in shared_sorted:
            if v in g_model:
                m[v] = g_model[v]
            elif rng is None:
                m[v] = False
            else:
                m[v] = rng.random() < 0.5

        any_failed = False
        extensions: dict[int, dict[int, bool]] = {}
        for i, part_solver in enumerate(parts):
            if deadline is not None and time.monotonic() > deadline:
                return exhausted("time")
            assumptions = [v if m[v] else -v for v in part_shared[i]]
            t0 = time.monotonic()
            try:
                out = part_solver.solve(assumptions, deadline=deadline)
            except BudgetExceeded:
                return exhausted("time")
            dt = time.monotonic() - t0
            if isinstance(out, Sat):
                extensions[i] = out.model
                continue
            any_failed = True
            root = part_solver.labeled_refutation(assumptions)
            ref = interpolant_from_proof(part_solver.proof, root, system, rbc)
            itp_nodes = rbc.dag_size(ref)
            stats.interpolants += 1
            if itp_nodes > stats.peak_itp_nodes:
                stats.peak_itp_nodes = itp_nodes
            if on_interpolant is not None:
                proof = part_solver.proof
                a_leaves = []
                b_leaves = []
                for leaf in proof.reachable_inputs(root):
                    _, clause, label = proof.node(leaf)
                    (a_leaves if label == LABEL_A else b_leaves).append(clause)
                on_interpolant(
                    InterpolantRecord(
                        round_idx, i, ref, rbc, tuple(a_leaves), tuple(b_leaves)
                    )
                )
            lowered, root_lit = rbc.to_cnf_tseitin(ref, fresh)
            for c in lowered:
                g.add_clause(c, LABEL_A)
                g_clauses.append(c)
            g.add_clause((root_lit,), LABEL_A)
            g_clauses.append((root_lit,))
            stats.g_clause_count = len(g_clauses)
            stats.records.append(
                RoundRecord(
                    round_idx, i, dt, len(part_solver.proof), itp_nodes, len(g_clauses)
                )
            )
        if on_round is not None:
            on_round(round_idx, m, list(g_clauses))
        if not any_failed:
            model = assemble_model(m, extensions, decomposition)
            if not eval_formula(f, model):
                raise RuntimeError("internal: assembled model fails the input formula")
            return finish(ReconcileResult("SAT", model, stats))
    return exhausted("rounds")
