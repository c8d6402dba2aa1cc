#!/usr/bin/env python3
"""Partition-count sweep on a pigeonhole instance.

Pigeonhole formulas are small but hard for resolution-based solvers, and
they are where lazy decomposition shines: splitting the clause list into
more partitions often makes the whole reconciliation finish faster even
though everything runs on one core.  This script solves "8 pigeons into 7
holes" for a range of partition counts and prints the time curve.
"""

import time

from lazysat import Formula, ItpSystem, normalize_clause, reconcile


def pigeonhole(pigeons, holes):
    clauses = [
        tuple((p - 1) * holes + h for h in range(1, holes + 1))
        for p in range(1, pigeons + 1)
    ]
    for h in range(1, holes + 1):
        for p1 in range(1, pigeons + 1):
            for p2 in range(p1 + 1, pigeons + 1):
                clauses.append(
                    normalize_clause((-((p1 - 1) * holes + h), -((p2 - 1) * holes + h)))
                )
    return Formula(tuple(clauses), pigeons * holes)


f = pigeonhole(8, 7)
print(f"php(8,7): {len(f.clauses)} clauses over {f.num_vars} vars\n")
print(f"{'k':>4} {'verdict':>8} {'seconds':>8} {'rounds':>7} {'G clauses':>10}")
for k in (1, 2, 5, 10, 20, 35, 50):
    t0 = time.monotonic()
    r = reconcile(f, k, ItpSystem.MCMILLAN)
    dt = time.monotonic() - t0
    print(f"{k:>4} {r.verdict:>8} {dt:>8.2f} {r.stats.rounds:>7} {r.stats.g_clause_count:>10}")

print("\nFor CSV output across a full range use the CLI instead:")
print("  lazysat sweep hole8.cnf --partitions 2..50 --itp mcmillan --csv sweep.csv")
