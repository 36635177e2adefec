"""Pure three-mode Gaussian states with real position-space wave functions.

A state is described by a real symmetric positive-definite matrix ``A`` with
``psi(x) ~ exp(-x^T A x / 2)``.  Quadratures are ``x = (a + a^dag)/sqrt(2)``
and ``p = -i(a - a^dag)/sqrt(2)``; covariance matrices use the convention
``gamma = 2 * Cov`` so that the vacuum has ``gamma = I``.  With that choice a
pure state has ``gamma = diag(A^-1, A)`` in ``(x1, x2, x3, p1, p2, p3)``
ordering and physicality reads ``gamma - iJ >= 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import _arith
from .errors import DomainError, NumericError

#: Largest condition number accepted for a state matrix.
COND_LIMIT = 1e12


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GaussianPureState:
    """Immutable pure state ``psi(x) ~ exp(-x^T A x / 2)`` on three modes.

    ``entries`` keeps the matrix in its native arithmetic: ``Fraction`` for
    exactly specified states, ``mpmath.mpf`` or ``float`` otherwise.  Use
    :meth:`from_matrix` or one of the family constructors rather than
    building the tuple by hand.
    """

    entries: tuple
    kind: str = "raw"
    params: tuple = ()
    A: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(_arith.normalize_entry(x) for x in row) for row in self.entries)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise DomainError("state matrix must be 3x3")
        for i in range(3):
            for j in range(i + 1, 3):
                if rows[i][j] != rows[j][i]:
                    raise DomainError(f"state matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)
        with mpmath.workdps(_arith.WORKING_DPS):
            minors = _arith.leading_minors3(rows)
            if not all(m > 0 for m in minors):
                raise DomainError("state matrix is not positive definite")
        A = _readonly([[float(x) for x in row] for row in rows])
        cond = np.linalg.cond(A)
        if not np.isfinite(cond) or cond > COND_LIMIT:
            raise NumericError(f"state matrix condition number {cond:.3g} exceeds {COND_LIMIT:g}")
        object.__setattr__(self, "A", A)

    @classmethod
    def from_matrix(cls, A, *, symmetrize: bool = False) -> "GaussianPureState":
        """Build a raw state.  Integer and Fraction entries stay exact."""
        if isinstance(A, np.ndarray):
            rows = [[float(x) for x in row] for row in A]
        else:
            rows = [list(row) for row in A]
        if symmetrize:
            rows = [[(rows[i][j] + rows[j][i]) / 2 for j in range(3)] for i in range(3)]
        return cls(tuple(tuple(r) for r in rows))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(x, Fraction) for row in self.entries for x in row)

    @property
    def arithmetic_mode(self) -> str:
        return "exact-rational" if self.is_exact else "high-precision-float"

    def precise_entries(self):
        """Entries as Fractions (exact states) or mpf values."""
        if self.is_exact:
            return self.entries
        return tuple(tuple(_arith.to_mpf(x) for x in row) for row in self.entries)

    def precise_inverse(self):
        """Inverse in exact or working-precision arithmetic."""
        with mpmath.workdps(_arith.WORKING_DPS):
            return _arith.inv3(self.precise_entries())

    @property
    def A_inv(self) -> np.ndarray:
        return spd_inverse(self.A)

    def inverse_state(self) -> "GaussianPureState":
        """The state whose matrix is ``A^-1`` (position and momentum swapped)."""
        return GaussianPureState(self.precise_inverse(), kind="raw")

    def param(self, name: str):
        return dict(self.params).get(name)


@dataclass(frozen=True)
class GhzwParameters:
    a: Fraction
    e_minus: mpmath.mpf
    e_plus: mpmath.mpf


@dataclass(frozen=True)
class CovarianceMatrix:
    """Covariance ``gamma`` (vacuum = identity) in ``(x..., p...)`` ordering."""

    gamma: np.ndarray
    mean: np.ndarray = None

    def __post_init__(self):
        g = np.array(self.gamma, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2:
            raise DomainError("covariance must be a square matrix of even size")
        if not np.allclose(g, g.T, rtol=0, atol=1e-12):
            raise DomainError("covariance matrix is not symmetric")
        mean = np.zeros(g.shape[0]) if self.mean is None else np.asarray(self.mean, dtype=float)
        if mean.shape != (g.shape[0],):
            raise DomainError("mean vector has the wrong length")
        object.__setattr__(self, "gamma", _readonly(g))
        object.__setattr__(self, "mean", _readonly(mean))

    @property
    def n_modes(self) -> int:
        return self.gamma.shape[0] // 2

    @property
    def x_block(self) -> np.ndarray:
        n = self.n_modes
        return self.gamma[:n, :n]

    @property
    def p_block(self) -> np.ndarray:
        n = self.n_modes
        return self.gamma[n:, n:]

    def require_zero_mean(self):
        if np.any(self.mean != 0):
            raise DomainError("states with nonzero mean are not supported")


def spd_inverse(A: np.ndarray) -> np.ndarray:
    """Inverse of a symmetric positive-definite matrix via Cholesky."""
    A = np.asarray(A, dtype=float)
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise NumericError(f"condition number {cond:.3g} exceeds {COND_LIMIT:g}")
    try:
        L = np.linalg.cholesky(A)
    except np.linalg.LinAlgError as exc:
        raise NumericError("matrix is not positive definite") from exc
    Linv = np.linalg.solve(L, np.eye(len(A)))
    inv = Linv.T @ Linv
    return (inv + inv.T) / 2


def make_xi_state(xi) -> GaussianPureState:
    """Unit diagonal, every off-diagonal entry equal to ``xi``; needs -1/2 < xi < 1."""
    x = _arith.as_parameter(xi)
    if not (Fraction(-1, 2) < x < 1):
        raise DomainError(f"xi must satisfy -1/2 < xi < 1, got {xi}")
    one = Fraction(1)
    rows = tuple(tuple(one if i == j else x for j in range(3)) for i in range(3))
    return GaussianPureState(rows, kind="xi", params=(("xi", x),))


def ghzw_offdiagonals(a) -> tuple:
    """Return ``(e_minus, e_plus)`` for the GHZ/W family at working precision."""
    a = _arith.as_parameter(a)
    if not a > 1:
        raise DomainError(f"GHZ/W parameter must satisfy a > 1, got {a}")
    with mpmath.workdps(_arith.WORKING_DPS):
        am = _arith.to_mpf(a)
        root = mpmath.sqrt((am**2 - 1) * (9 * am**2 - 1))
        return (am**2 - 1 - root) / (4 * am), (am**2 - 1 + root) / (4 * am)


def make_ghzw_state(a) -> tuple:
    """GHZ/W family member and its off-diagonal parameters.

    The returned matrix has diagonal ``a`` and off-diagonal ``e_plus``; its
    inverse then has diagonal ``a`` and off-diagonal ``e_minus``.  This is
    the orientation (anticorrelated positions) whose moment hierarchy and
    partial-transpose minors take the known values at ``a = 3/2``.
    """
    a = _arith.as_parameter(a)
    e_minus, e_plus = ghzw_offdiagonals(a)
    with mpmath.workdps(_arith.WORKING_DPS):
        diag = _arith.to_mpf(a)
        rows = tuple(tuple(diag if i == j else e_plus for j in range(3)) for i in range(3))
    state = GaussianPureState(rows, kind="ghzw", params=(("a", a),))
    return state, GhzwParameters(a=a, e_minus=e_minus, e_plus=e_plus)


def make_proposition_state() -> GaussianPureState:
    """The state annihilated by ``a^dag + b + c``."""
    rows = ((3, 2, 2), (2, 2, 1), (2, 1, 2))
    return GaussianPureState(tuple(tuple(Fraction(v) for v in r) for r in rows), kind="proposition")


def vacuum_state() -> GaussianPureState:
    return make_xi_state(0)


def random_state(rng: np.random.Generator, low: float = 0.3, high: float = 3.0) -> GaussianPureState:
    """Random SPD matrix with eigenvalues drawn uniformly from ``[low, high]``."""
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    A = q @ np.diag(rng.uniform(low, high, size=3)) @ q.T
    return GaussianPureState.from_matrix(A, symmetrize=True)


def covariance_of(state: GaussianPureState) -> CovarianceMatrix:
    """``gamma = diag(A^-1, A)`` with zero mean."""
    gamma = np.zeros((6, 6))
    gamma[:3, :3] = spd_inverse(state.A)
    gamma[3:, 3:] = state.A
    return CovarianceMatrix(gamma)
