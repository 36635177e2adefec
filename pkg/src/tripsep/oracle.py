"""Brute-force checks that share no code path with the closed forms.

* Wick/Isserlis: a zero-mean Gaussian expectation of an ordered product of
  linear forms in ladder operators is the sum over perfect pairings of the
  ordered two-point contractions.
* Gauss-Hermite quadrature of the Hermite-polynomial integral that the
  moment of ``Z^m psi`` reduces to in position space.
* Truncated Fock matrices for the reordering identity of ``X^n Y^m`` when
  ``[X, Y]`` is a c-number.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .errors import DomainError, NumericError, ResourceError
from .states import CovarianceMatrix, GaussianPureState, covariance_of, spd_inverse

#: Default cap on the number of pairs (2M operators, (2M-1)!! pairings).
MAX_PAIRS = 8


@dataclass(frozen=True)
class LinearForm:
    """``L = sum_i coeff_a[i] a_i + coeff_adag[i] a_i^dag``."""

    coeff_a: tuple
    coeff_adag: tuple

    def __post_init__(self):
        a = tuple(complex(c) for c in self.coeff_a)
        ad = tuple(complex(c) for c in self.coeff_adag)
        if len(a) != len(ad):
            raise DomainError("coefficient vectors must have equal length")
        if not any(a) and not any(ad):
            raise DomainError("linear form has no nonzero coefficient")
        object.__setattr__(self, "coeff_a", a)
        object.__setattr__(self, "coeff_adag", ad)

    @property
    def n_modes(self) -> int:
        return len(self.coeff_a)

    def dagger(self) -> "LinearForm":
        return LinearForm(
            tuple(c.conjugate() for c in self.coeff_adag),
            tuple(c.conjugate() for c in self.coeff_a),
        )

    def scaled(self, factor: complex) -> "LinearForm":
        return LinearForm(tuple(factor * c for c in self.coeff_a), tuple(factor * c for c in self.coeff_adag))


def z_form(k: int, n_modes: int = 3, *, tilde: bool = False, extra_annihilators=()) -> LinearForm:
    """``Z = a_k + sum_{i != k} a_i^dag`` (``-a_k`` when ``tilde``).

    Modes listed in ``extra_annihilators`` enter as ``+a_i`` rather than
    ``+a_i^dag``; this builds the ancilla-augmented operator.
    """
    if not 1 <= k <= n_modes:
        raise DomainError(f"partition index {k} out of range")
    ca = [0.0] * n_modes
    cd = [0.0] * n_modes
    for i in range(n_modes):
        if i == k - 1:
            ca[i] = -1.0 if tilde else 1.0
        elif i in extra_annihilators:
            ca[i] = 1.0
        else:
            cd[i] = 1.0
    return LinearForm(tuple(ca), tuple(cd))


@dataclass(frozen=True)
class ContractionTable:
    """Ordered second moments ``<a_i a_j>``, ``<a_i a_j^dag>``, ``<a_i^dag a_j>``, ``<a_i^dag a_j^dag>``."""

    aa: np.ndarray
    a_adag: np.ndarray
    adag_a: np.ndarray
    adag_adag: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.aa.shape[0]

    @classmethod
    def from_covariance(cls, cov: CovarianceMatrix) -> "ContractionTable":
        """Contractions from ``gamma`` (vacuum = I) for a zero-mean state.

        With ``r = (x, p)`` and ``[x_i, p_j] = i delta_ij`` the ordered second
        moments are ``<r r^T> = gamma/2 + i Omega/2``, ``Omega = [[0, I], [-I, 0]]``.
        The ladder operators are ``a = T r`` with ``T = [I, iI]/sqrt(2)``.
        """
        cov.require_zero_mean()
        n = cov.n_modes
        I = np.eye(n)
        omega = np.block([[np.zeros((n, n)), I], [-I, np.zeros((n, n))]])
        R = cov.gamma / 2 + 0.5j * omega
        T = np.hstack([I, 1j * I]) / np.sqrt(2)
        Td = np.hstack([I, -1j * I]) / np.sqrt(2)
        return cls(
            aa=T @ R @ T.T,
            a_adag=T @ R @ Td.T,
            adag_a=Td @ R @ T.T,
            adag_adag=Td @ R @ Td.T,
        )

    @classmethod
    def from_state(cls, state: GaussianPureState) -> "ContractionTable":
        return cls.from_covariance(covariance_of(state))

    @classmethod
    def from_pure_matrix(cls, A) -> "ContractionTable":
        """Closed-form contractions for a real pure state with matrix ``A``."""
        A = np.asarray(A, dtype=float)
        Ai = spd_inverse(A)
        I = np.eye(len(A))
        return cls(
            aa=(Ai - A) / 4 + 0j,
            a_adag=(Ai + A) / 4 + I / 2 + 0j,
            adag_a=(Ai + A) / 4 - I / 2 + 0j,
            adag_adag=(Ai - A) / 4 + 0j,
        )

    def commutator_residual(self) -> float:
        """Max deviation of ``<a_i a_j^dag> - <a_j^dag a_i>`` from ``delta_ij``."""
        return float(np.max(np.abs(self.a_adag - self.adag_a.T - np.eye(self.n_modes))))

    def contraction(self, left: LinearForm, right: LinearForm) -> complex:
        """``<left right>``."""
        la, ld = np.array(left.coeff_a), np.array(left.coeff_adag)
        ra, rd = np.array(right.coeff_a), np.array(right.coeff_adag)
        return complex(la @ self.aa @ ra + la @ self.a_adag @ rd + ld @ self.adag_a @ ra + ld @ self.adag_adag @ rd)


def _csum(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def iter_pairings(indices):
    """All perfect pairings; the first index is paired with each later one in turn."""
    indices = list(indices)
    if not indices:
        yield ()
        return
    first, rest = indices[0], indices[1:]
    for pos, partner in enumerate(rest):
        remaining = rest[:pos] + rest[pos + 1:]
        for tail in iter_pairings(remaining):
            yield ((first, partner),) + tail


def wick_moment(table: ContractionTable, forms, *, max_pairs: int = MAX_PAIRS, method: str = "memo") -> complex:
    """``<L_1 L_2 ... L_2M>`` for a zero-mean Gaussian state.

    ``method="enumerate"`` walks every pairing explicitly.  ``method="memo"``
    evaluates the same sum, grouped: the contribution of all pairings of a
    remaining subsequence depends only on which forms it contains, so
    subsequences are keyed by their form labels and summed once.
    """
    forms = list(forms)
    if len(forms) % 2:
        raise DomainError("Wick moment needs an even number of operators")
    if len(forms) // 2 > max_pairs:
        raise ResourceError(f"{len(forms) // 2} pairs exceed cap {max_pairs}")
    if not forms:
        return 1.0 + 0j
    labels = []
    distinct = []
    for f in forms:
        if f not in distinct:
            distinct.append(f)
        labels.append(distinct.index(f))
    C = [[table.contraction(a, b) for b in distinct] for a in distinct]

    if method == "enumerate":
        terms = []
        for pairing in iter_pairings(range(len(forms))):
            prod = 1.0 + 0j
            for i, j in pairing:
                prod *= C[labels[i]][labels[j]]
            terms.append(prod)
        return _csum(terms)
    if method != "memo":
        raise DomainError(f"unknown method {method!r}")

    @lru_cache(maxsize=None)
    def total(seq):
        if not seq:
            return 1.0 + 0j
        first, rest = seq[0], seq[1:]
        terms = []
        for pos, partner in enumerate(rest):
            terms.append(C[first][partner] * total(rest[:pos] + rest[pos + 1:]))
        return _csum(terms)

    return total(tuple(labels))


def normalized_moment(table: ContractionTable, z: LinearForm, m: int, *, max_pairs: int = MAX_PAIRS) -> complex:
    """``(1/m!) <Z^dag^m Z^m>``."""
    forms = [z.dagger()] * m + [z] * m
    return wick_moment(table, forms, max_pairs=max_pairs) / math.factorial(m)


def partition_moment_oracle(state: GaussianPureState, k: int, m: int, *, tilde: bool = False, imag_tol: float = 1e-10) -> float:
    """Wick evaluation of the partition-``k`` moment of order ``m``."""
    if m > MAX_PAIRS:
        raise ResourceError(f"order {m} exceeds Wick cap {MAX_PAIRS}")
    table = ContractionTable.from_state(state)
    value = normalized_moment(table, z_form(k, tilde=tilde), m)
    if abs(value.imag) > imag_tol * max(1.0, abs(value.real)):
        raise NumericError(f"moment has imaginary residue {value.imag:.3g}")
    return value.real


def symmetric_sum_oracle(state: GaussianPureState, m: int, *, tilde: bool = False) -> float:
    return math.fsum(partition_moment_oracle(state, k, m, tilde=tilde) for k in (1, 2, 3)) / 3


def hermite(m: int, y):
    """Physicists' Hermite polynomial by ``H_{n+1} = 2y H_n - 2n H_{n-1}``."""
    y = np.asarray(y, dtype=float)
    h_prev, h = np.ones_like(y), 2 * y
    if m == 0:
        return h_prev
    for n in range(1, m):
        h_prev, h = h, 2 * y * h - 2 * n * h_prev
    return h


def _gh_expectation(m: int, tau: float, n_nodes: int) -> float:
    # E[H_m(y)^2] for y ~ N(0, tau^2): substitute y = sqrt(2) tau t against weight exp(-t^2)
    t, w = hermgauss(n_nodes)
    return float(np.sum(w * hermite(m, np.sqrt(2) * tau * t) ** 2) / np.sqrt(np.pi))


def quadrature_moment_oracle(state: GaussianPureState, k: int, m: int, *, rtol: float = 1e-10) -> float:
    """Partition moment from ``lam^m/(m! 4^m) E[H_m(u.x / sqrt(2 lam))^2]`` under ``psi^2``.

    ``u.x`` is Gaussian with variance ``u^T A^-1 u / 2`` under ``psi^2``, so the
    three-dimensional integral collapses to a one-dimensional Gauss-Hermite sum.
    """
    if not 0 <= m <= 30:
        raise DomainError(f"quadrature oracle supports 0 <= m <= 30, got {m}")
    if k not in (1, 2, 3):
        raise DomainError(f"partition index must be 1, 2 or 3, got {k}")
    A = state.A
    Ai = spd_inverse(A)
    e = np.array([1.0 if i == k - 1 else -1.0 for i in range(3)])
    lam = 1 + e @ A @ e
    u = np.ones(3) - A @ e
    var_s = u @ Ai @ u / 2
    tau = np.sqrt(var_s / (2 * lam))
    n = 2 * m + 16
    scale = lam**m / (math.factorial(m) * 4.0**m)
    coarse = scale * _gh_expectation(m, tau, n)
    fine = scale * _gh_expectation(m, tau, 2 * n)
    if abs(fine - coarse) > rtol * abs(fine):
        raise NumericError(f"quadrature did not converge: {coarse!r} vs {fine!r}")
    return fine


@dataclass(frozen=True)
class ReorderSpec:
    n: int
    m: int
    c: complex = 1

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise DomainError("powers must be non-negative")


def reorder_coefficients(spec: ReorderSpec) -> list:
    """Coefficients ``k! C(n,k) C(m,k) c^k`` of ``Y^(m-k) X^(n-k)`` in ``X^n Y^m``.

    With ``c = 0`` only the ``k = 0`` term survives.
    """
    if spec.c == 0:
        return [(0, 1)]
    return [
        (k, math.factorial(k) * math.comb(spec.n, k) * math.comb(spec.m, k) * spec.c**k)
        for k in range(min(spec.n, spec.m) + 1)
    ]


def _annihilator(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def fock_verify_reorder(spec: ReorderSpec, dim: int, *, atol: float = 1e-10) -> bool:
    """Check the reordering identity with ``X = a`` and ``Y = c a^dag`` in a truncated Fock space.

    Truncation only corrupts matrix elements that reach the top Fock level,
    so both sides are compared on the leading ``dim - n - m`` block.
    """
    n, m = spec.n, spec.m
    if dim < n + m + 2:
        raise DomainError(f"dim={dim} too small for n={n}, m={m}; need at least {n + m + 2}")
    c = complex(spec.c)
    a = _annihilator(dim)
    X, Y = a, c * a.conj().T
    mp = np.linalg.matrix_power
    lhs = mp(X, n) @ mp(Y, m)
    rhs = np.zeros_like(lhs)
    for k, coeff in reorder_coefficients(spec):
        rhs += coeff * mp(Y, m - k) @ mp(X, n - k)
    b = dim - n - m
    diff = np.abs(lhs[:b, :b] - rhs[:b, :b])
    scale = max(1.0, float(np.max(np.abs(lhs[:b, :b]))))
    return bool(np.all(diff <= atol * scale))


def all_reorder_cases(max_total: int = 8):
    """Every ``(n, m)`` with ``n + m <= max_total``."""
    return [(n, m) for n, m in itertools.product(range(max_total + 1), repeat=2) if n + m <= max_total]
