"""Closed-form moment hierarchy for pure Gaussian states.

For the bipartition ``k|rest`` define the sign vector ``e`` (+1 at slot k,
-1 elsewhere) and ``j = (1, 1, 1)``.  The generating function of the
normalized moments ``(1/m!) <Z^dag^m Z^m>``, ``Z = a_k + sum_{i != k} a_i^dag``,
factorizes as

    G(t) = 1 / sqrt((1 - alpha t)(1 - beta t)),
    alpha = (1 + e^T A e) / 2,   beta = (1 + j^T A^-1 j) / 2,

so the m-th moment is ``4^-m sum_k C(2k,k) C(2m-2k,m-k) alpha^k beta^(m-k)``.
The derivation only uses ``j^T e = -1`` and a real wave function, so it is
applied to every partition of every real state; the oracle module checks
that claim independently.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import _arith
from .errors import DomainError, ResourceError
from .states import GaussianPureState, ghzw_offdiagonals

DEFAULT_M_MAX = 12
M_MAX_CAP = 64

EXACT = "exact-rational"
HIGH_PRECISION = "high-precision-float"

J = (1, 1, 1)


def sign_vector(k: int) -> tuple:
    if k not in (1, 2, 3):
        raise DomainError(f"partition index must be 1, 2 or 3, got {k}")
    return tuple(1 if i == k - 1 else -1 for i in range(3))


@dataclass(frozen=True)
class PartitionGeometry:
    k: int
    e: tuple
    j: tuple
    lam: object
    u: tuple
    alpha: object
    beta: object


def partition_geometry(state: GaussianPureState, k: int) -> PartitionGeometry:
    e = sign_vector(k)
    with mpmath.workdps(_arith.WORKING_DPS):
        A = state.precise_entries()
        Ainv = state.precise_inverse()
        lam = 1 + _arith.quad(e, A)
        Ae = _arith.matvec(A, e)
        u = tuple(1 - v for v in Ae)
        alpha = lam / 2
        beta = (1 + _arith.quad(J, Ainv)) / 2
    return PartitionGeometry(k=k, e=e, j=J, lam=lam, u=u, alpha=alpha, beta=beta)


def pole_pair(state: GaussianPureState, k: int = 1) -> tuple:
    """``(alpha, beta)`` for partition ``k``; exact for rational states."""
    g = partition_geometry(state, k)
    return g.alpha, g.beta


def tilde_pole_pair(state: GaussianPureState, k: int = 1) -> tuple:
    """Poles of the generating function built from ``Z~ = -a_k + sum a_i^dag``."""
    e = sign_vector(k)
    with mpmath.workdps(_arith.WORKING_DPS):
        A = state.precise_entries()
        Ainv = state.precise_inverse()
        return (1 + _arith.quad(e, Ainv)) / 2, (1 + _arith.quad(J, A)) / 2


@dataclass(frozen=True)
class MomentSeries:
    """Per-order values ``m = 0..m_max``."""

    values: tuple
    arithmetic_mode: str = EXACT
    source: str = "closed-form"

    def __post_init__(self):
        if not self.values:
            raise DomainError("empty moment series")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, m):
        return self.values[m]

    @property
    def m_max(self) -> int:
        return len(self.values) - 1

    def as_float(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])


def central_binomials(n_max: int) -> list:
    """``C(2n, n)`` for ``n = 0..n_max`` via ``C(2n+2, n+1) = C(2n, n) (4n+2)/(n+1)``."""
    out = [1]
    for n in range(n_max):
        nxt = out[-1] * (4 * n + 2)
        assert nxt % (n + 1) == 0
        out.append(nxt // (n + 1))
    return out


def _check_m_max(m_max: int, cap: int = M_MAX_CAP):
    if not isinstance(m_max, int) or m_max < 0:
        raise DomainError(f"m_max must be a non-negative integer, got {m_max!r}")
    if m_max > cap:
        raise ResourceError(f"m_max={m_max} exceeds cap {cap}")


def series_from_poles(alpha, beta, m_max: int = DEFAULT_M_MAX, *, cap: int = M_MAX_CAP) -> MomentSeries:
    """Coefficients of ``1/sqrt((1 - alpha t)(1 - beta t))`` up to ``t^m_max``.

    Rational poles give exact Fractions; anything else is evaluated with
    mpmath at the working precision.
    """
    _check_m_max(m_max, cap)
    cb = central_binomials(m_max)
    exact = _arith.is_exact(alpha) and _arith.is_exact(beta)
    mode = EXACT if exact else HIGH_PRECISION
    with mpmath.workdps(_arith.WORKING_DPS):
        # convert inside the context: to_mpf rounds at the ambient precision
        if exact:
            a, b = Fraction(alpha), Fraction(beta)
        else:
            a, b = _arith.to_mpf(alpha), _arith.to_mpf(beta)
        apow = [a**0]
        bpow = [b**0]
        for _ in range(m_max):
            apow.append(apow[-1] * a)
            bpow.append(bpow[-1] * b)
        values = []
        for m in range(m_max + 1):
            if mode == EXACT:
                total = sum(cb[k] * cb[m - k] * apow[k] * bpow[m - k] for k in range(m + 1))
                values.append(Fraction(total) / 4**m)
            else:
                terms = [cb[k] * cb[m - k] * apow[k] * bpow[m - k] for k in range(m + 1)]
                values.append(mpmath.fsum(terms) / mpmath.mpf(4) ** m)
    return MomentSeries(tuple(values), arithmetic_mode=mode, source="closed-form")


def partition_series(state: GaussianPureState, k: int = 1, m_max: int = DEFAULT_M_MAX) -> MomentSeries:
    alpha, beta = pole_pair(state, k)
    return series_from_poles(alpha, beta, m_max)


def tilde_series(state: GaussianPureState, k: int = 1, m_max: int = DEFAULT_M_MAX) -> MomentSeries:
    alpha, beta = tilde_pole_pair(state, k)
    return series_from_poles(alpha, beta, m_max)


def _average(series_list, source="closed-form") -> MomentSeries:
    n = len(series_list)
    exact = all(s.arithmetic_mode == EXACT for s in series_list)
    with mpmath.workdps(_arith.WORKING_DPS):
        if exact:
            vals = tuple(sum(s.values[m] for s in series_list) / n for m in range(len(series_list[0])))
        else:
            vals = tuple(
                mpmath.fsum(_arith.to_mpf(s.values[m]) for s in series_list) / n
                for m in range(len(series_list[0]))
            )
    return MomentSeries(vals, arithmetic_mode=EXACT if exact else HIGH_PRECISION, source=source)


def symmetric_sum(state: GaussianPureState, m_max: int = DEFAULT_M_MAX) -> MomentSeries:
    """Pointwise mean of the three partition series."""
    return _average([partition_series(state, k, m_max) for k in (1, 2, 3)])


def tilde_symmetric_sum(state: GaussianPureState, m_max: int = DEFAULT_M_MAX) -> MomentSeries:
    return _average([tilde_series(state, k, m_max) for k in (1, 2, 3)])


def e_m(x, m: int):
    """``4^-m sum_k C(2k,k) C(2m-2k,m-k) x^k``; exact for rational ``x``."""
    if not isinstance(m, int) or m < 0:
        raise DomainError(f"order must be a non-negative integer, got {m!r}")
    if not 0 <= x <= 1:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    return series_from_poles(x, 1, m, cap=max(M_MAX_CAP, m)).values[m]


def ghzw_series(a, m_max: int = DEFAULT_M_MAX) -> MomentSeries:
    from .states import make_ghzw_state

    state, _ = make_ghzw_state(a)
    return symmetric_sum(state, m_max)


def violation_ratio(a, m: int):
    """Biseparable bound ``(2^m + 2)/3`` divided by the GHZ/W symmetric sum."""
    ghzw_offdiagonals(a)  # domain check
    s = ghzw_series(a, m).values[m]
    with mpmath.workdps(_arith.WORKING_DPS):
        return (mpmath.mpf(2) ** m + 2) / 3 / s


def mixture_series(components) -> MomentSeries:
    """Convex combination ``sum_i w_i S_i`` of moment series of equal length."""
    components = list(components)
    if not components:
        raise DomainError("mixture needs at least one component")
    weights = [w for w, _ in components]
    series = [s for _, s in components]
    if any(w < 0 for w in weights):
        raise DomainError("mixture weights must be non-negative")
    if abs(float(sum(weights)) - 1.0) > 1e-12:
        raise DomainError(f"mixture weights sum to {float(sum(weights))!r}, not 1")
    if len({len(s) for s in series}) != 1:
        raise DomainError("mixture components have different lengths")
    exact = all(s.arithmetic_mode == EXACT for s in series) and all(_arith.is_exact(w) for w in weights)
    with mpmath.workdps(_arith.WORKING_DPS):
        if exact:
            vals = tuple(sum(Fraction(w) * s.values[m] for w, s in components) for m in range(len(series[0])))
        else:
            vals = tuple(
                mpmath.fsum(_arith.to_mpf(w) * _arith.to_mpf(s.values[m]) for w, s in components)
                for m in range(len(series[0]))
            )
    return MomentSeries(vals, arithmetic_mode=EXACT if exact else HIGH_PRECISION, source=series[0].source)
