#!/usr/bin/env python3
"""Walk through Craig interpolation on a tiny labeled refutation.

We split a contradictory clause set into an A part ({x}, {~x v y}) and a
B part ({~y}), let the solver refute it, and then read an interpolant off
the proof under each of the three supported systems.  Every interpolant
must be implied by A, contradict B, and mention only shared variables;
here all three systems find (something equivalent to) y.
"""

from itertools import product

from lazysat import (
    LABEL_A,
    ItpSystem,
    RbcStore,
    Solver,
    UnsatUnderAssumptions,
    interpolant_from_proof,
)

X, Y = 1, 2

solver = Solver()
solver.add_clause([X], LABEL_A)
solver.add_clause([-X, Y], LABEL_A)

# The B side enters as assumptions: one unit clause per literal of a
# candidate shared-variable model.
outcome = solver.solve([-Y])
assert isinstance(outcome, UnsatUnderAssumptions)
print("conflicting assumptions:", outcome.conflict_assumptions)

root = solver.labeled_refutation([-Y])
print("\nrefutation (id, kind, ...):")
print(solver.proof.dump(root))

rbc = RbcStore()
for system in ItpSystem:
    ref = interpolant_from_proof(solver.proof, root, system, rbc)
    table = {
        (x, y): rbc.evaluate(ref, {X: x, Y: y})
        for x, y in product([False, True], repeat=2)
    }
    print(f"{system.value:>14}: vars={sorted(rbc.vars(ref))} truth table={table}")

print(f"\ncircuit store holds {len(rbc)} nodes shared across all three systems")
