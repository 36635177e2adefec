from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given

from tripsep import _arith
from tripsep.errors import DomainError, NumericError
from tripsep.states import (
    CovarianceMatrix,
    GaussianPureState,
    covariance_of,
    ghzw_offdiagonals,
    make_ghzw_state,
    make_proposition_state,
    make_xi_state,
    spd_inverse,
    vacuum_state,
)

from .conftest import spd_states, xi_values


def test_xi_state_is_exact():
    s = make_xi_state(Fraction(1, 2))
    assert s.is_exact
    assert s.entries[0][1] == Fraction(1, 2)
    assert s.param("xi") == Fraction(1, 2)


def test_float_parameter_read_by_decimal_repr():
    assert make_xi_state(0.1).param("xi") == Fraction(1, 10)


@pytest.mark.parametrize("xi", [-0.5, 1, 1.5, Fraction(-3, 4)])
def test_xi_domain(xi):
    with pytest.raises(DomainError):
        make_xi_state(xi)


@pytest.mark.parametrize("a", [1, 0.5, 0, -2])
def test_ghzw_domain(a):
    with pytest.raises(DomainError):
        make_ghzw_state(a)


def test_ghzw_pair_are_mutual_inverses():
    state, p = make_ghzw_state(Fraction(3, 2))
    inv = state.precise_inverse()
    with mpmath.workdps(_arith.WORKING_DPS):
        assert abs(inv[0][0] - Fraction(3, 2)) < mpmath.mpf("1e-55")
        assert abs(inv[0][1] - p.e_minus) < mpmath.mpf("1e-55")
        assert abs(state.entries[0][1] - p.e_plus) < mpmath.mpf("1e-55")


def test_ghzw_offdiagonal_values():
    em, ep = ghzw_offdiagonals(Fraction(3, 2))
    with mpmath.workdps(_arith.WORKING_DPS):
        root = mpmath.sqrt(mpmath.mpf(5) / 4 * mpmath.mpf(77) / 4)
        assert abs(ep - (mpmath.mpf(5) / 4 + root) / 6) < mpmath.mpf("1e-50")
    assert em < 0 < ep


def test_rejects_asymmetric():
    with pytest.raises(DomainError):
        GaussianPureState.from_matrix([[1, 0.1, 0], [0, 1, 0], [0, 0, 1]])


def test_symmetrize_option():
    s = GaussianPureState.from_matrix([[1, 0.1, 0], [0.3, 1, 0], [0, 0, 1]], symmetrize=True)
    assert s.A[0, 1] == pytest.approx(0.2)


def test_rejects_indefinite():
    with pytest.raises(DomainError):
        GaussianPureState.from_matrix([[1, 2, 0], [2, 1, 0], [0, 0, 1]])


def test_rejects_wrong_shape():
    with pytest.raises(DomainError):
        GaussianPureState.from_matrix([[1, 0], [0, 1]])


def test_rejects_ill_conditioned():
    with pytest.raises(NumericError):
        GaussianPureState.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1e-13]])


def test_state_is_immutable():
    s = vacuum_state()
    with pytest.raises(ValueError):
        s.A[0, 0] = 2.0
    with pytest.raises(AttributeError):
        s.kind = "other"


def test_proposition_state():
    s = make_proposition_state()
    assert s.is_exact
    assert s.A.tolist() == [[3, 2, 2], [2, 2, 1], [2, 1, 2]]


def test_vacuum_covariance_is_identity():
    assert np.array_equal(covariance_of(vacuum_state()).gamma, np.eye(6))


@given(spd_states())
def test_covariance_blocks(state):
    g = covariance_of(state)
    assert np.allclose(g.x_block @ state.A, np.eye(3), atol=1e-9)
    assert np.allclose(g.p_block, state.A)


@given(spd_states())
def test_spd_inverse_symmetric(state):
    inv = spd_inverse(state.A)
    assert np.array_equal(inv, inv.T)
    assert np.allclose(inv @ state.A, np.eye(3), atol=1e-9)


@given(xi_values)
def test_exact_inverse_of_xi_state(x):
    s = make_xi_state(x)
    inv = s.precise_inverse()
    prod = [[sum(s.entries[i][k] * inv[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert prod == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]


def test_covariance_validation():
    with pytest.raises(DomainError):
        CovarianceMatrix(np.eye(5))
    with pytest.raises(DomainError):
        CovarianceMatrix(np.array([[1, 0.5], [0, 1]]))
    with pytest.raises(DomainError):
        CovarianceMatrix(np.eye(2), mean=np.zeros(3))
    with pytest.raises(DomainError):
        CovarianceMatrix(np.eye(2), mean=np.ones(2)).require_zero_mean()
