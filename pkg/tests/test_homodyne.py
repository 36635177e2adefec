import itertools
import math

import numpy as np
import pytest
from hypothesis import given

from tripsep.errors import DomainError
from tripsep.homodyne import (
    BATCH_MAGIC,
    LinearNetwork,
    analytic_tprime,
    augment_with_vacuum,
    augmented_moment_oracle,
    build_network,
    estimate,
    measured_covariance,
    network_rows_exact,
    read_batch,
    sample,
    tprime_verdict,
    write_batch,
)
from tripsep.states import covariance_of, make_xi_state, vacuum_state
from tripsep.witnesses import EXCLUDES_FULL_SEP, GENUINE, t1_from_covariance

from .conftest import spd_states

NET = build_network()


def test_network_is_orthogonal_exactly():
    rows = network_rows_exact()
    for i, j in itertools.product(range(4), repeat=2):
        assert sum(a * b for a, b in zip(rows[i], rows[j])) == (1 if i == j else 0)


def test_measured_quadratures_commute():
    # x of output 1 and p of outputs 2..4 commute because O is orthogonal
    O = NET.O
    assert np.allclose(O[0] @ O[1:].T, 0)


def test_network_validation():
    with pytest.raises(DomainError):
        LinearNetwork(np.ones((4, 4)))


def test_vacuum_tprime():
    assert analytic_tprime(augment_with_vacuum(covariance_of(vacuum_state())), NET) == 12.0


@given(spd_states())
def test_tprime_is_t1_plus_three(state):
    cov = covariance_of(state)
    assert analytic_tprime(augment_with_vacuum(cov), NET) == pytest.approx(t1_from_covariance(cov).t1 + 3, rel=1e-12)


@given(spd_states())
def test_invariant_under_relabelling_outputs_two_to_four(state):
    g4 = augment_with_vacuum(covariance_of(state))
    base = analytic_tprime(g4, NET)
    for perm in itertools.permutations((1, 2, 3)):
        O = NET.O[[0, *perm]]
        assert analytic_tprime(g4, LinearNetwork(O)) == pytest.approx(base, rel=1e-12)


def test_augmented_moment_matches_tprime():
    # the order-1 augmented moment is T'/6 for the symmetric quantity averaged over k
    g4 = augment_with_vacuum(covariance_of(make_xi_state(0.5)))
    avg = sum(augmented_moment_oracle(g4, k, 1) for k in (1, 2, 3)) / 3
    assert avg == pytest.approx(analytic_tprime(g4, NET) / 6, rel=1e-10)


def test_tprime_verdicts():
    assert tprime_verdict(7.0) == GENUINE
    assert tprime_verdict(10.0) == EXCLUDES_FULL_SEP


def test_measured_variances_vacuum():
    m = measured_covariance(augment_with_vacuum(covariance_of(vacuum_state())), NET)
    assert np.allclose(m, np.eye(4) / 2)


@pytest.mark.parametrize("seed", range(20))
def test_sampling_consistent_with_analytic(seed):
    g4 = augment_with_vacuum(covariance_of(make_xi_state(0.5)))
    exact = analytic_tprime(g4, NET)
    rep = estimate(sample(g4, NET, 10_000, seed), exact)
    assert abs(rep.deviation_in_sigma) <= 4


def test_seeded_replay_and_chunk_independence():
    g4 = augment_with_vacuum(covariance_of(make_xi_state(0.25)))
    a = sample(g4, NET, 5000, 3)
    b = sample(g4, NET, 5000, 3)
    assert a.samples.tobytes() == b.samples.tobytes()
    c = sample(g4, NET, 5000, 4)
    assert a.samples.tobytes() != c.samples.tobytes()
    # a longer run shares its first chunk with a shorter one
    d = sample(g4, NET, 3000, 3, chunk=1000)
    e = sample(g4, NET, 1000, 3, chunk=1000)
    assert np.array_equal(d.samples[:1000], e.samples)


def test_jackknife_matches_plain_standard_error():
    g4 = augment_with_vacuum(covariance_of(vacuum_state()))
    batch = sample(g4, NET, 20_000, 11)
    q = batch.samples**2 @ np.array([12.0, 4, 4, 4])
    rep = estimate(batch)
    assert rep.std_error == pytest.approx(q.std(ddof=1) / math.sqrt(len(q)), rel=1e-9)
    assert rep.deviation_in_sigma is None


def test_sampling_guards():
    g4 = augment_with_vacuum(covariance_of(vacuum_state()))
    with pytest.raises(DomainError):
        sample(g4, NET, 1, 0)
    with pytest.raises(DomainError):
        sample(g4, NET, 10, -1)


def test_batch_round_trip(tmp_path):
    g4 = augment_with_vacuum(covariance_of(make_xi_state(0.5)))
    batch = sample(g4, NET, 257, 2**40 + 5)
    path = tmp_path / "b.bin"
    write_batch(path, batch)
    raw = path.read_bytes()
    assert raw[:2] == BATCH_MAGIC and len(raw) == 16 + 257 * 32
    back = read_batch(path)
    assert back.seed == batch.seed and back.shots == 257
    assert back.samples.tobytes() == batch.samples.tobytes()


def test_batch_rejects_corruption(tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"XX" + bytes(14))
    with pytest.raises(DomainError):
        read_batch(path)
    path.write_bytes(b"TH")
    with pytest.raises(DomainError):
        read_batch(path)
    g4 = augment_with_vacuum(covariance_of(vacuum_state()))
    write_batch(path, sample(g4, NET, 4, 0))
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(DomainError):
        read_batch(path)
