"""Four-port measurement of the augmented lowest-order quantity.

Modes ``(a, b, c)`` carry the state under test and ``z`` is a vacuum
ancilla.  A real orthogonal network ``O`` maps them to four outputs whose
x-quadrature (output 1) and p-quadratures (outputs 2-4) commute, so one
shot records all four at once.  With outputs scaled by 1/2,

    T' = 12 Var(x_out1) + 4 (Var(p_out2) + Var(p_out3) + Var(p_out4)),

and the separability thresholds read ``T' - 3 >= 9, 5, 3``.

Batch files: a 16-byte little-endian header ``<2sHIQ`` holding the magic
``b"TH"``, format version, shot count and seed, followed by ``shots x 4``
float64 values in row-major order.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NumericError
from .oracle import ContractionTable, normalized_moment, z_form
from .states import CovarianceMatrix
from .witnesses import GUARD, T1_THRESHOLDS, verdict

RNG_ALGORITHM = "numpy-PCG64/SeedSequence([seed,chunk])/standard_normal/cholesky"
CHUNK = 1 << 16

BATCH_MAGIC = b"TH"
BATCH_VERSION = 1
_HEADER = struct.Struct("<2sHIQ")

# rows act on (a, b, c, z)
_ROWS = (
    (1, 1, 1, 1),
    (1, -1, -1, 1),
    (-1, 1, -1, 1),
    (-1, -1, 1, 1),
)


@dataclass(frozen=True)
class LinearNetwork:
    O: np.ndarray

    def __post_init__(self):
        O = np.array(self.O, dtype=float)
        if O.shape != (4, 4) or not np.allclose(O.T @ O, np.eye(4), rtol=0, atol=1e-12):
            raise DomainError("network must be a 4x4 orthogonal matrix")
        O.setflags(write=False)
        object.__setattr__(self, "O", O)

    @property
    def symplectic(self) -> np.ndarray:
        """``O (+) O`` acting on ``(x1..x4, p1..p4)``."""
        Z = np.zeros((4, 4))
        return np.block([[self.O, Z], [Z, self.O]])


def network_rows_exact() -> list:
    return [[Fraction(v, 2) for v in row] for row in _ROWS]


def build_network() -> LinearNetwork:
    """Rows ``(1,1,1,1)/2, (1,-1,-1,1)/2, (-1,1,-1,1)/2, (-1,-1,1,1)/2``."""
    return LinearNetwork(np.array(_ROWS, dtype=float) / 2)


def augment_with_vacuum(cov: CovarianceMatrix) -> CovarianceMatrix:
    """Append a vacuum fourth mode; ordering becomes ``(x1..x4, p1..p4)``."""
    if cov.n_modes != 3:
        raise DomainError("expected a three-mode covariance")
    g = np.eye(8)
    g[:3, :3] = cov.x_block
    g[4:7, 4:7] = cov.p_block
    g[:3, 4:7] = cov.gamma[:3, 3:]
    g[4:7, :3] = cov.gamma[3:, :3]
    mean = np.zeros(8)
    mean[:3], mean[4:7] = cov.mean[:3], cov.mean[3:]
    return CovarianceMatrix(g, mean)


def output_covariance(gamma4: CovarianceMatrix, network: LinearNetwork) -> np.ndarray:
    S = network.symplectic
    return S @ gamma4.gamma @ S.T


# x of output 1, p of outputs 2..4
_MEASURED = (0, 5, 6, 7)
_WEIGHTS = np.array([12.0, 4.0, 4.0, 4.0])


def measured_covariance(gamma4: CovarianceMatrix, network: LinearNetwork) -> np.ndarray:
    """Outcome covariance of the four recorded quadratures (vacuum variance 1/2)."""
    G = output_covariance(gamma4, network)
    return G[np.ix_(_MEASURED, _MEASURED)] / 2


def analytic_tprime(gamma4: CovarianceMatrix, network: LinearNetwork) -> float:
    gamma4.require_zero_mean()
    var = np.diag(measured_covariance(gamma4, network))
    return math.fsum(_WEIGHTS * var)


def tprime_verdict(value: float, guard: float = GUARD) -> str:
    """Verdict for ``T' - 3`` against the thresholds ``9, 5, 3``."""
    return verdict(value - 3, *T1_THRESHOLDS, guard=guard)


def augmented_moment_oracle(gamma4: CovarianceMatrix, k: int, m: int) -> float:
    """``(1/m!) <Z'^dag^m Z'^m>`` with ``Z' = a_k + sum_{i != k} a_i^dag + a_z``."""
    table = ContractionTable.from_covariance(gamma4)
    z = z_form(k, n_modes=4, extra_annihilators=(3,))
    return normalized_moment(table, z, m).real


@dataclass(frozen=True)
class SampleBatch:
    shots: int
    seed: int
    samples: np.ndarray
    rng_algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        if self.shots < 1 or self.samples.shape != (self.shots, 4):
            raise DomainError("sample array must have shape (shots, 4) with shots >= 1")


def _factor(cov: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        w, v = np.linalg.eigh(cov)
        if w.min() < -1e-12 * max(1.0, w.max()):
            raise NumericError("measured covariance is not positive semidefinite") from None
        return v * np.sqrt(np.clip(w, 0, None))


def sample(gamma4: CovarianceMatrix, network: LinearNetwork, shots: int, seed: int, *, chunk: int = CHUNK) -> SampleBatch:
    """Draw joint homodyne outcomes.

    Shots are generated in fixed-size chunks; chunk ``i`` draws from its own
    stream seeded by ``(seed, i)``, so results do not depend on how chunks
    might be distributed over workers.
    """
    if shots < 2:
        raise DomainError("need at least two shots for an error estimate")
    if not 0 <= seed < 2**64:
        raise DomainError("seed must be an unsigned 64-bit integer")
    gamma4.require_zero_mean()
    L = _factor(measured_covariance(gamma4, network))
    out = np.empty((shots, 4))
    for i, start in enumerate(range(0, shots, chunk)):
        stop = min(start + chunk, shots)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, i])))
        out[start:stop] = rng.standard_normal((stop - start, 4)) @ L.T
    return SampleBatch(shots=shots, seed=seed, samples=out)


@dataclass(frozen=True)
class EstimateReport:
    t_prime_estimate: float
    std_error: float
    analytic_value: float | None
    shots: int
    z: float
    verdict: str

    @property
    def deviation_in_sigma(self) -> float | None:
        if self.analytic_value is None:
            return None
        return (self.t_prime_estimate - self.analytic_value) / self.std_error


def estimate(batch: SampleBatch, analytic_value: float | None = None, *, z: float = 3.0, guard: float = GUARD) -> EstimateReport:
    """Estimate ``T'`` from raw second moments with a jackknife standard error.

    The verdict is taken on the upper confidence bound ``estimate + z * se``
    so that a detection survives statistical fluctuation.
    """
    if batch.shots < 2:
        raise DomainError("need at least two shots")
    q = batch.samples**2 @ _WEIGHTS
    n = len(q)
    theta = q.mean()
    loo = (n * theta - q) / (n - 1)
    se = math.sqrt((n - 1) / n * np.sum((loo - loo.mean()) ** 2))
    return EstimateReport(
        t_prime_estimate=float(theta),
        std_error=se,
        analytic_value=analytic_value,
        shots=n,
        z=z,
        verdict=tprime_verdict(theta + z * se, guard),
    )


def write_batch(path, batch: SampleBatch) -> None:
    if batch.shots >= 2**32:
        raise DomainError("batch file format stores at most 2^32 - 1 shots")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(BATCH_MAGIC, BATCH_VERSION, batch.shots, batch.seed))
        fh.write(np.ascontiguousarray(batch.samples, dtype="<f8").tobytes())


def read_batch(path) -> SampleBatch:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise DomainError("truncated batch header")
        magic, version, shots, seed = _HEADER.unpack(head)
        if magic != BATCH_MAGIC or version != BATCH_VERSION:
            raise DomainError(f"not a version-{BATCH_VERSION} batch file")
        data = np.frombuffer(fh.read(), dtype="<f8")
    if data.size != 4 * shots:
        raise DomainError("batch payload length does not match header")
    return SampleBatch(shots=shots, seed=seed, samples=data.reshape(shots, 4).astype(float))
