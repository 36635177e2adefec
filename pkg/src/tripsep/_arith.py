"""Scalar helpers that work uniformly over Fraction, mpmath.mpf and float.

Small 3x3 matrices are kept as tuples of tuples so that exact rational
entries survive every operation (determinant, inverse, quadratic forms).
"""
from __future__ import annotations

import numbers
import os
from fractions import Fraction

import mpmath

#: Decimal digits used for every high-precision evaluation.
WORKING_DPS = int(os.environ.get("TRIPSEP_PRECISION", "60"))

if WORKING_DPS < 50:
    raise ImportError("TRIPSEP_PRECISION must be at least 50 digits")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def as_parameter(x) -> Fraction:
    """Interpret a user-facing family parameter as an exact rational.

    Floats are read through their shortest decimal repr, so ``0.9`` becomes
    ``9/10`` rather than the nearest binary fraction.
    """
    if isinstance(x, bool):
        raise TypeError("boolean is not a valid parameter")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, numbers.Real):
        return Fraction(repr(float(x)))
    raise TypeError(f"cannot interpret {x!r} as a real parameter")


def to_mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def normalize_entry(x):
    """Map an entry to one of Fraction, mpf or float."""
    if isinstance(x, bool):
        raise TypeError("boolean matrix entry")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, numbers.Real):
        return float(x)
    raise TypeError(f"unsupported matrix entry {x!r}")


def unify(values):
    """Return values in a common arithmetic: all Fraction, else all mpf."""
    values = list(values)
    if all(isinstance(v, Fraction) for v in values):
        return values
    return [to_mpf(v) for v in values]


def det3(M):
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def inv3(M):
    d = det3(M)
    cof = [
        [M[1][1] * M[2][2] - M[1][2] * M[2][1], -(M[1][0] * M[2][2] - M[1][2] * M[2][0]), M[1][0] * M[2][1] - M[1][1] * M[2][0]],
        [-(M[0][1] * M[2][2] - M[0][2] * M[2][1]), M[0][0] * M[2][2] - M[0][2] * M[2][0], -(M[0][0] * M[2][1] - M[0][1] * M[2][0])],
        [M[0][1] * M[1][2] - M[0][2] * M[1][1], -(M[0][0] * M[1][2] - M[0][2] * M[1][0]), M[0][0] * M[1][1] - M[0][1] * M[1][0]],
    ]
    # inverse = adjugate / det, adjugate = transpose of the cofactor matrix
    return tuple(tuple(cof[j][i] / d for j in range(3)) for i in range(3))


def quad(v, M):
    """v^T M v."""
    n = len(v)
    return sum(v[i] * M[i][j] * v[j] for i in range(n) for j in range(n))


def matvec(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M)))


def leading_minors3(M):
    return (M[0][0], M[0][0] * M[1][1] - M[0][1] * M[1][0], det3(M))


def lt(a, b) -> bool:
    """``a < b`` across Fraction/mpf/float without rounding the exact side early."""
    if is_exact(a) and is_exact(b):
        return Fraction(a) < Fraction(b)
    with mpmath.workdps(WORKING_DPS):
        return to_mpf(a) < to_mpf(b)
