"""GHZ/W states: the violation of the biseparable bound grows with the order.

The symmetric sum grows like (2/beta)^m against 2^m, so the ratio
V(m) = ((2^m + 2)/3) / S(m) increases geometrically.  The approach of the
step ratio V(m+1)/V(m) to 2/beta is slow: corrections fall off like 1/m.
"""
from fractions import Fraction

import mpmath

from tripsep import pole_pair, violation_ratio
from tripsep.states import make_ghzw_state

for a in (Fraction(11, 10), Fraction(3, 2), Fraction(2), Fraction(5)):
    state, params = make_ghzw_state(a)
    e_pole, j_pole = pole_pair(state)
    print(f"a = {a}: e_+ = {mpmath.nstr(params.e_plus, 12)}, poles {mpmath.nstr(e_pole, 12)} and {mpmath.nstr(j_pole, 12)}")

a = Fraction(3, 2)
state, _ = make_ghzw_state(a)
e_pole, _ = pole_pair(state)
limit = float(2 / e_pole)
print(f"\na = 3/2, asymptotic step ratio 2/beta = {limit:.5f}")
print(f"{'m':>3} {'V(m)':>12} {'V(m)/V(m-1)':>12}")
for m in (1, 2, 4, 8, 12, 16, 24, 32, 48, 64):
    v = float(violation_ratio(a, m))
    step = "" if m == 1 else f"{float(violation_ratio(a, m) / violation_ratio(a, m - 1)):12.5f}"
    print(f"{m:>3} {v:12.5g} {step}")
