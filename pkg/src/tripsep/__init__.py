"""Higher-order moment separability witnesses for three-mode Gaussian states."""

from .errors import DomainError, NumericError, ResourceError
from .moments import (
    MomentSeries,
    e_m,
    mixture_series,
    partition_series,
    pole_pair,
    series_from_poles,
    symmetric_sum,
    tilde_series,
    tilde_symmetric_sum,
    violation_ratio,
)
from .states import (
    CovarianceMatrix,
    GaussianPureState,
    covariance_of,
    make_ghzw_state,
    make_proposition_state,
    make_xi_state,
    vacuum_state,
)
from .witnesses import classify, epr_moment_bound_check, t1_from_covariance

__version__ = "0.1.0"

__all__ = [
    "CovarianceMatrix",
    "DomainError",
    "GaussianPureState",
    "MomentSeries",
    "NumericError",
    "ResourceError",
    "classify",
    "covariance_of",
    "e_m",
    "epr_moment_bound_check",
    "make_ghzw_state",
    "make_proposition_state",
    "make_xi_state",
    "mixture_series",
    "partition_series",
    "pole_pair",
    "series_from_poles",
    "symmetric_sum",
    "t1_from_covariance",
    "tilde_series",
    "tilde_symmetric_sum",
    "vacuum_state",
    "violation_ratio",
]
