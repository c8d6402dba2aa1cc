#!/usr/bin/env python3
"""Trace the reconciliation loop round by round on a small instance.

The formula is split into two partitions that overlap on a few variables.
Each round proposes a total model over the shared variables, asks every
partition to extend it, and refines the global formula G with an
interpolant from each partition that refuses.  Watching the trace shows G
growing until either some proposal extends everywhere (SAT) or G itself
becomes contradictory (UNSAT).
"""

from lazysat import Formula, decompose_lazy, normalize_clause, reconcile

# A small unsatisfiable instance: an xor-style chain with contradictory ends.
clauses = [
    (1, 2), (-1, -2),          # x1 xor x2
    (2, 3), (-2, -3),          # x2 xor x3
    (1, 3), (-1, -3),          # x1 xor x3  -> jointly impossible
]
f = Formula(tuple(normalize_clause(c) for c in clauses), 3)

d = decompose_lazy(f, 2)
for p in d.partitions:
    print(f"partition {p.index}: clauses {p.clauses} vars {sorted(p.vars)}")
print(f"shared variables: {sorted(d.shared_vars)}\n")


def show_round(round_idx, m, g_clauses):
    model = " ".join(f"x{v}={'T' if b else 'F'}" for v, b in sorted(m.items()))
    print(f"round {round_idx}: proposed {model}; G now has {len(g_clauses)} clauses")


def show_interpolant(rec):
    print(
        f"  partition {rec.partition} refused: interpolant of {rec.rbc.dag_size(rec.ref)}"
        f" circuit nodes over vars {sorted(rec.rbc.vars(rec.ref))}"
    )


result = reconcile(f, 2, on_round=show_round, on_interpolant=show_interpolant)
print(f"\nverdict: {result.verdict} after {result.stats.rounds} rounds,"
      f" {result.stats.interpolants} interpolants,"
      f" {result.stats.g_clause_count} clauses conjoined to G")
if result.verdict == "UNSAT":
    ok = result.g_proof.check_refutation(result.g_refutation)
    print(f"final refutation of G checks: {ok}")
