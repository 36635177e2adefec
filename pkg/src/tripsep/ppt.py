"""Physicality and partial-transpose tests on covariance matrices.

Partial transposition of mode ``k`` flips the sign of ``p_k``.  A
three-mode Gaussian state is in class 1 (inseparable for every grouping)
when all three partially transposed covariances violate ``gamma >= iJ``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .states import CovarianceMatrix

PSD_TOL = 1e-10


def symplectic_form(n: int = 3) -> np.ndarray:
    """``J = [[0, -I], [I, 0]]`` in ``(x..., p...)`` ordering."""
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, -I], [I, Z]])


def pt_flip(k: int, n: int = 3) -> np.ndarray:
    """``Lambda_k``: identity except ``-1`` on the ``p_k`` entry."""
    if not 1 <= k <= n:
        raise DomainError(f"mode index {k} out of range")
    d = np.ones(2 * n)
    d[n + k - 1] = -1.0
    return np.diag(d)


def _gamma(gamma) -> np.ndarray:
    g = gamma.gamma if isinstance(gamma, CovarianceMatrix) else np.asarray(gamma, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2:
        raise DomainError("covariance must be square with even size")
    if np.max(np.abs(g - g.T)) > 1e-12:
        raise DomainError("covariance matrix is not symmetric")
    return g


def principal_minor(M: np.ndarray, drop=()) -> float:
    """Determinant after deleting the listed rows and columns (0-based)."""
    keep = [i for i in range(M.shape[0]) if i not in set(drop)]
    d = np.linalg.det(M[np.ix_(keep, keep)])
    return float(d.real)


def uncertainty_matrix(gamma, k: int | None = None) -> np.ndarray:
    """``Lambda_k gamma Lambda_k - iJ`` (no flip when ``k`` is None)."""
    g = _gamma(gamma)
    n = g.shape[0] // 2
    if k is not None:
        L = pt_flip(k, n)
        g = L @ g @ L
    return g - 1j * symplectic_form(n)


@dataclass(frozen=True)
class Physicality:
    physical: bool
    min_eigenvalue: float


def is_physical(gamma, tol: float = PSD_TOL) -> Physicality:
    lo = float(np.linalg.eigvalsh(uncertainty_matrix(gamma)).min())
    return Physicality(physical=lo >= -tol, min_eigenvalue=lo)


@dataclass(frozen=True)
class PartitionPT:
    k: int
    negative: bool
    witness_minor: float
    min_eigenvalue: float


@dataclass(frozen=True)
class Class1Result:
    partitions: tuple

    @property
    def class1(self) -> bool:
        return all(p.negative for p in self.partitions)


def designated_minor_rows(k: int, n: int = 3) -> tuple:
    # delete the momentum row of the mode two steps after k; for k=1 this
    # leaves the leading 5x5 block
    other = (k + 1) % n
    return (n + other,)


def pt_class1_check(gamma, tol: float = PSD_TOL) -> Class1Result:
    """Partial-transpose test for each single-mode bipartition."""
    g = _gamma(gamma)
    n = g.shape[0] // 2
    out = []
    for k in range(1, n + 1):
        M = uncertainty_matrix(g, k)
        lo = float(np.linalg.eigvalsh(M).min())
        out.append(PartitionPT(
            k=k,
            negative=lo < -tol,
            witness_minor=principal_minor(M, designated_minor_rows(k, n)),
            min_eigenvalue=lo,
        ))
    return Class1Result(tuple(out))
