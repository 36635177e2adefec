"""Thresholds and verdicts for the tripartite hierarchy and the EPR moments.

For every order ``m >= 1`` the symmetric sum obeys

    S >= 2^m          (fully separable)
    S >= (2^m + 2)/3  (biseparable, including mixtures across partitions)
    S > 1             (every state)

and the lowest order translates to ``T >= 9, 5, 3`` for the quadrature
combination ``T = 6 S - 3``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import _arith
from .errors import DomainError, ResourceError
from .moments import MomentSeries
from .oracle import MAX_PAIRS, ContractionTable, LinearForm, wick_moment
from .states import CovarianceMatrix

GUARD = 1e-9

GENUINE = "genuine-entanglement-detected"
EXCLUDES_FULL_SEP = "full-separability-excluded"
NO_DETECTION = "no-detection"
BOUNDARY = "boundary-inconclusive"
UNPHYSICAL = "unphysical-input"

_STRENGTH = {GENUINE: 3, EXCLUDES_FULL_SEP: 2, BOUNDARY: 1, NO_DETECTION: 0}

T1_THRESHOLDS = (9, 5, 3)


def full_separable_bound(m: int) -> int:
    return 2**m


def biseparable_bound(m: int) -> Fraction:
    return Fraction(2**m + 2, 3)


def verdict(value, full_sep, bisep, floor, guard: float = GUARD) -> str:
    """Compare one value against a threshold triple.

    A value inside the relative guard band of the separable or biseparable
    threshold is reported as boundary-inconclusive instead of being counted
    as a detection.  Values at or below the universal floor are flagged as
    unphysical input.
    """
    v = float(value)

    def near(t):
        return abs(v - float(t)) <= guard * abs(float(t))

    # the floor is strict for physical states, so touching it is also flagged
    if v <= float(floor) * (1 + guard):
        return UNPHYSICAL
    if any(near(t) for t in (full_sep, bisep)):
        return BOUNDARY
    if v < float(bisep):
        return GENUINE
    if v < float(full_sep):
        return EXCLUDES_FULL_SEP
    return NO_DETECTION


def _strongest(verdicts) -> str:
    usable = [v for v in verdicts if v != UNPHYSICAL]
    best = max(usable, key=_STRENGTH.__getitem__, default=NO_DETECTION)
    # an inconclusive tie is not a detection
    return NO_DETECTION if best == BOUNDARY else best


@dataclass(frozen=True)
class OrderResult:
    m: int
    value: object
    full_sep_threshold: int
    bisep_threshold: Fraction
    universal_floor: int
    verdict: str
    margin_full_sep: float
    margin_bisep: float


@dataclass(frozen=True)
class WitnessReport:
    per_m: tuple
    overall_verdict: str
    unphysical: bool = False
    source: str = "closed-form"

    @property
    def margins(self) -> dict:
        return {r.m: (r.margin_full_sep, r.margin_bisep) for r in self.per_m}

    @property
    def verdicts(self) -> dict:
        return {r.m: r.verdict for r in self.per_m}


def classify(series: MomentSeries, guard: float = GUARD) -> WitnessReport:
    """Per-order verdicts for a symmetric-sum series (orders ``m >= 1``)."""
    if series is None or len(series) < 2:
        raise DomainError("series must contain at least one order m >= 1")
    rows = []
    with mpmath.workdps(_arith.WORKING_DPS):
        for m in range(1, len(series)):
            value = series.values[m]
            fs, bs = full_separable_bound(m), biseparable_bound(m)
            v = float(value)
            rows.append(OrderResult(
                m=m,
                value=value,
                full_sep_threshold=fs,
                bisep_threshold=bs,
                universal_floor=1,
                verdict=verdict(value, fs, bs, 1, guard),
                margin_full_sep=(v - fs) / fs,
                margin_bisep=(v - float(bs)) / float(bs),
            ))
    verdicts = [r.verdict for r in rows]
    return WitnessReport(
        per_m=tuple(rows),
        overall_verdict=_strongest(verdicts),
        unphysical=UNPHYSICAL in verdicts,
        source=series.source,
    )


@dataclass(frozen=True)
class QuadratureWitness:
    t1: float
    components: tuple = field(default=())
    verdict: str = NO_DETECTION

    @property
    def s1(self) -> float:
        return self.t1 / 6 + 0.5


def t1_from_covariance(cov: CovarianceMatrix, *, tilde: bool = False, guard: float = GUARD) -> QuadratureWitness:
    """``3<(x1+x2+x3)^2> + sum_k <(e_k . p)^2>`` from the covariance blocks.

    ``components`` holds the four expectation values in that order.  With
    ``tilde`` the roles of positions and momenta are exchanged.
    """
    cov.require_zero_mean()
    if cov.n_modes != 3:
        raise DomainError("quadrature witness needs a three-mode covariance")
    cx, cp = cov.x_block / 2, cov.p_block / 2
    if tilde:
        cx, cp = cp, cx
    j = np.ones(3)
    comps = [float(j @ cx @ j)]
    for k in range(3):
        e = -np.ones(3)
        e[k] = 1.0
        comps.append(float(e @ cp @ e))
    t1 = 3 * comps[0] + math.fsum(comps[1:])
    return QuadratureWitness(t1=t1, components=tuple(comps), verdict=verdict(t1, *T1_THRESHOLDS, guard=guard))


def t1_xi_closed_form(xi):
    """``(9/(1+2 xi) + 9 - 6 xi)/2``, defined on ``-1/2 < xi <= 1``.

    At ``xi = 1`` this is the limit of the family, which is not a state.
    """
    x = _arith.as_parameter(xi)
    if not Fraction(-1, 2) < x <= 1:
        raise DomainError(f"closed form needs -1/2 < xi <= 1, got {xi}")
    return (Fraction(9) / (1 + 2 * x) + 9 - 6 * x) / 2


def tmsv_covariance(r: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum with ``x1 - x2`` and ``p1 + p2`` squeezed."""
    if r < 0:
        raise DomainError("squeezing parameter must be non-negative")
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    gamma = np.zeros((4, 4))
    gamma[:2, :2] = [[c, s], [s, c]]
    gamma[2:, 2:] = [[c, -s], [-s, c]]
    return CovarianceMatrix(gamma)


@dataclass(frozen=True)
class EprCheck:
    n: int
    r: float
    value: float
    bound: int
    violated: bool
    closed_form: float


def epr_moment_bound_check(n: int, r: float) -> EprCheck:
    """``<O_EPR^n>`` with ``O_EPR = (x1 - x2)^2 + (p1 + p2)^2`` via Wick pairings.

    ``O_EPR = 2 (a1^dag - a2)(a1 - a2^dag)`` and the two factors commute, so
    ``<O^n> = 2^n <(a1^dag - a2)^n (a1 - a2^dag)^n>``.
    """
    if n < 0:
        raise DomainError("order must be non-negative")
    if n > MAX_PAIRS:
        raise ResourceError(f"order {n} exceeds Wick cap {MAX_PAIRS}")
    table = ContractionTable.from_covariance(tmsv_covariance(r))
    z = LinearForm((1, 0), (0, -1))
    raw = wick_moment(table, [z.dagger()] * n + [z] * n)
    value = 2**n * raw.real
    bound = 2**n * math.factorial(n)
    closed = math.factorial(n) * 2**n * math.exp(-2 * r * n)
    return EprCheck(n=n, r=r, value=value, bound=bound, violated=value < bound * (1 - GUARD), closed_form=closed)
