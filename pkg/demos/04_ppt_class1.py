"""Cross-check against the partial-transpose criterion.

Flipping one momentum transposes that mode.  A state that violates the
uncertainty relation after every single-mode flip is inseparable under all
three bipartitions.
"""
from fractions import Fraction

from tripsep.ppt import principal_minor, pt_class1_check, uncertainty_matrix
from tripsep.states import covariance_of, make_ghzw_state, make_xi_state, vacuum_state

cases = [("vacuum", vacuum_state()), ("xi = 1/2", make_xi_state(Fraction(1, 2))),
         ("GHZ/W a = 3/2", make_ghzw_state(Fraction(3, 2))[0])]
for label, state in cases:
    res = pt_class1_check(covariance_of(state))
    eig = ", ".join(f"{p.min_eigenvalue:+.4f}" for p in res.partitions)
    print(f"{label:<14} min eigenvalues [{eig}]  class 1: {res.class1}")

g = covariance_of(make_ghzw_state(Fraction(3, 2))[0])
print("\nGHZ/W minor after deleting x2:", round(principal_minor(uncertainty_matrix(g, 1), drop=(1,)), 4))
