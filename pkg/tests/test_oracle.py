import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tripsep.errors import DomainError, ResourceError
from tripsep.moments import partition_series, tilde_series
from tripsep.oracle import (
    MAX_PAIRS,
    ContractionTable,
    LinearForm,
    ReorderSpec,
    all_reorder_cases,
    fock_verify_reorder,
    hermite,
    iter_pairings,
    normalized_moment,
    partition_moment_oracle,
    quadrature_moment_oracle,
    reorder_coefficients,
    wick_moment,
    z_form,
)
from tripsep.states import covariance_of, make_proposition_state, random_state, vacuum_state

from .conftest import spd_states

RANDOM_STATES = [random_state(np.random.default_rng(1000 + i)) for i in range(20)]


@pytest.mark.parametrize("idx", range(20))
def test_three_way_agreement(idx):
    state = RANDOM_STATES[idx]
    for k in (1, 2, 3):
        closed = partition_series(state, k, 6).as_float()
        for m in range(7):
            assert partition_moment_oracle(state, k, m) == pytest.approx(closed[m], rel=1e-9)
            assert quadrature_moment_oracle(state, k, m) == pytest.approx(closed[m], rel=1e-8)


@given(spd_states())
def test_tilde_closed_form_matches_wick(state):
    for k in (1, 2, 3):
        closed = tilde_series(state, k, 4).as_float()
        for m in (1, 3, 4):
            assert partition_moment_oracle(state, k, m, tilde=True) == pytest.approx(closed[m], rel=1e-9)


def test_count_of_pairings():
    for n in range(1, 6):
        assert sum(1 for _ in iter_pairings(range(2 * n))) == math.prod(range(1, 2 * n, 2))


@given(spd_states(), st.integers(1, 4))
def test_memo_equals_enumeration(state, m):
    table = ContractionTable.from_state(state)
    z = z_form(1)
    forms = [z.dagger()] * m + [z] * m
    assert wick_moment(table, forms, method="memo") == pytest.approx(wick_moment(table, forms, method="enumerate"), rel=1e-12)


@given(spd_states(), st.floats(0, 2 * math.pi), st.integers(1, 4))
def test_global_phase_invariance(state, phi, m):
    table = ContractionTable.from_state(state)
    z = z_form(2)
    rotated = z.scaled(cmath.exp(1j * phi))
    assert normalized_moment(table, rotated, m).real == pytest.approx(normalized_moment(table, z, m).real, rel=1e-10)


@given(spd_states())
def test_contractions_respect_commutator(state):
    assert ContractionTable.from_state(state).commutator_residual() < 1e-12


def test_vacuum_contractions():
    t = ContractionTable.from_covariance(covariance_of(vacuum_state()))
    assert np.allclose(t.a_adag, np.eye(3))
    assert np.allclose(t.adag_a, 0)
    assert np.allclose(t.aa, 0)


def test_proposition_annihilated():
    # a^dag + b + c kills this state, so <L^dag L> vanishes for L = a^dag + b + c
    t = ContractionTable.from_state(make_proposition_state())
    L = LinearForm((0, 1, 1), (1, 0, 0))
    assert abs(wick_moment(t, [L.dagger(), L])) < 1e-12


def test_wick_caps_and_parity():
    t = ContractionTable.from_state(vacuum_state())
    z = z_form(1)
    with pytest.raises(ResourceError):
        wick_moment(t, [z] * (2 * MAX_PAIRS + 2))
    with pytest.raises(DomainError):
        wick_moment(t, [z] * 3)
    with pytest.raises(DomainError):
        wick_moment(t, [z, z], method="fancy")
    with pytest.raises(ResourceError):
        partition_moment_oracle(vacuum_state(), 1, MAX_PAIRS + 1)


def test_linear_form_validation():
    with pytest.raises(DomainError):
        LinearForm((0, 0), (0, 0))
    with pytest.raises(DomainError):
        LinearForm((1,), (0, 0))


def test_hermite_recurrence():
    y = np.linspace(-2, 2, 5)
    assert np.allclose(hermite(3, y), 8 * y**3 - 12 * y)
    assert np.allclose(hermite(4, y), 16 * y**4 - 48 * y**2 + 12)


def test_quadrature_domain():
    with pytest.raises(DomainError):
        quadrature_moment_oracle(vacuum_state(), 1, 31)
    with pytest.raises(DomainError):
        quadrature_moment_oracle(vacuum_state(), 0, 2)


def test_reorder_all_cases():
    cases = all_reorder_cases(8)
    assert len(cases) == 45
    assert all(fock_verify_reorder(ReorderSpec(n, m), n + m + 8) for n, m in cases)


@pytest.mark.parametrize("c", [0.5, -2, 1j])
def test_reorder_scaled_commutator(c):
    assert fock_verify_reorder(ReorderSpec(3, 2, c), 20)


def test_reorder_zero_commutator_keeps_one_term():
    assert reorder_coefficients(ReorderSpec(3, 2, 0)) == [(0, 1)]
    assert reorder_coefficients(ReorderSpec(2, 2)) == [(0, 1), (1, 4), (2, 2)]


def test_reorder_detects_wrong_identity():
    # dropping the commutator terms must fail the check
    from tripsep import oracle

    spec = ReorderSpec(2, 2)
    good = oracle.reorder_coefficients
    try:
        oracle.reorder_coefficients = lambda s: [(0, 1)]
        assert not fock_verify_reorder(spec, 12)
    finally:
        oracle.reorder_coefficients = good


def test_reorder_dimension_guard():
    with pytest.raises(DomainError):
        fock_verify_reorder(ReorderSpec(3, 3), 7)
    with pytest.raises(DomainError):
        ReorderSpec(-1, 2)
