import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tripsep.states import GaussianPureState

settings.register_profile("default", max_examples=30, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def spd_states(draw, low=0.3, high=3.0):
    """Random well-conditioned state matrices built from a rotation and a spectrum."""
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    ev = [draw(st.floats(low, high)) for _ in range(3)]
    A = q @ np.diag(ev) @ q.T
    return GaussianPureState.from_matrix(A, symmetrize=True)


xi_values = st.fractions(min_value="-49/100", max_value="99/100", max_denominator=100)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
