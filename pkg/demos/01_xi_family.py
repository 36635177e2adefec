"""The symmetric xi family: how the moment hierarchy sees stronger correlations.

At xi = 0 the state is the vacuum and every order sits exactly on the
full-separability threshold 2^m.  Raising xi pushes the moments down,
first below 2^m and then below the biseparable threshold (2^m + 2)/3.
"""
from fractions import Fraction

from tripsep import classify, make_xi_state, pole_pair, symmetric_sum
from tripsep.witnesses import biseparable_bound

M = 8

print(f"{'xi':>6}  {'poles':<22} {'S(1)':>10} {'S(8)':>12}  verdict")
for xi in ("0", "1/4", "1/2", "3/4", "9/10", "99/100"):
    x = Fraction(xi)
    state = make_xi_state(x)
    alpha, beta = pole_pair(state)
    s = symmetric_sum(state, M)
    report = classify(s)
    print(f"{xi:>6}  ({str(alpha)}, {str(beta)})".ljust(31) + f"{float(s[1]):>10.5f} {float(s[M]):>12.4f}  {report.overall_verdict}")

print()
print("thresholds at m = 8:", 2**M, "and", float(biseparable_bound(M)))
print("rational states stay exact, e.g. xi = 1/2, m = 3:", symmetric_sum(make_xi_state(Fraction(1, 2)), 3)[3])
