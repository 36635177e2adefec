"""Three independent routes to the same moment.

The closed form comes from a two-pole generating function.  The Wick
oracle sums pairings of ladder operators.  The quadrature oracle integrates
Hermite polynomials against the position-space density.  They agree on an
arbitrary random state, not only on the symmetric families.
"""
import numpy as np

from tripsep.moments import partition_series
from tripsep.oracle import ReorderSpec, fock_verify_reorder, partition_moment_oracle, quadrature_moment_oracle
from tripsep.states import random_state

state = random_state(np.random.default_rng(2024))
print("A =\n", np.array2string(state.A, precision=4))
closed = partition_series(state, 2, 6).as_float()
print(f"\n{'m':>2} {'closed form':>16} {'Wick':>16} {'quadrature':>16}")
for m in range(7):
    print(f"{m:>2} {closed[m]:16.10f} {partition_moment_oracle(state, 2, m):16.10f} {quadrature_moment_oracle(state, 2, m):16.10f}")

print("\nreordering identity X^n Y^m with [X, Y] = 1, checked in a truncated Fock space:")
print(all(fock_verify_reorder(ReorderSpec(n, 8 - n), 20) for n in range(9)))
