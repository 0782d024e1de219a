import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infophys.ensemble import (
    DiscreteDistribution,
    Hamiltonian,
    boltzmann,
    ensemble_report,
    expectation,
    hamiltonian_from_distribution,
    internal_energy_fd,
    interpolate,
    log_partition,
)
from infophys.errors import DomainError

# 30-digit references from tools/derive_oracles.py
LNZ_01 = 0.31326168751822283405
E_01 = 0.26894142136999512075
SIGMA_01 = 0.5822031088882179548
LN_2COSH1 = 1.1269280110429724964
TWO_SPIN_LNZ = 1.8200751916029178059

energies = st.lists(st.floats(-50, 50), min_size=1, max_size=32)
betas = st.floats(1e-3, 1e3)


def test_two_level_reference():
    r = ensemble_report(Hamiltonian([0.0, 1.0]), 1.0)
    assert r.log_partition == pytest.approx(LNZ_01, abs=1e-14)
    assert r.internal_energy == pytest.approx(E_01, abs=1e-14)
    assert r.entropy_nats == pytest.approx(SIGMA_01, abs=1e-14)
    assert r.free_energy == pytest.approx(-LNZ_01, abs=1e-14)
    assert r.temperature == 1.0


def test_single_bond_partition():
    assert log_partition(Hamiltonian([-1.0, 1.0]), 1.0) == pytest.approx(LN_2COSH1, abs=1e-14)
    pair = Hamiltonian([-1.0, 1.0, 1.0, -1.0])
    assert log_partition(pair, 1.0) == pytest.approx(TWO_SPIN_LNZ, abs=1e-14)


def test_beta_zero_is_uniform():
    h = Hamiltonian([3.0, -2.0, 7.0])
    assert log_partition(h, 0.0) == pytest.approx(math.log(3))
    np.testing.assert_allclose(boltzmann(h, 0.0).probs, 1 / 3)
    with pytest.raises(DomainError):
        ensemble_report(h, 0.0)


def test_huge_beta_does_not_overflow():
    h = Hamiltonian([0.0, 1.0, 1.0])
    r = ensemble_report(h, 1e4)
    assert r.log_partition == pytest.approx(0.0, abs=1e-300)
    assert r.entropy_nats >= 0
    assert boltzmann(h, 1e4).probs[0] == 1.0


def test_forbidden_states():
    with pytest.raises(DomainError):
        Hamiltonian([0.0, math.inf])
    h = Hamiltonian([0.0, math.inf], allow_forbidden=True)
    p = boltzmann(h, 1.0)
    assert p.log_probs[1] == -math.inf
    assert expectation(p, [1.0, math.inf]) == 1.0
    assert ensemble_report(h, 1.0).entropy_nats == 0.0


@pytest.mark.parametrize("bad", [[], [math.nan], [-math.inf]])
def test_bad_energies(bad):
    with pytest.raises(DomainError):
        Hamiltonian(bad)


def test_negative_beta_rejected():
    with pytest.raises(DomainError):
        boltzmann(Hamiltonian([0.0, 1.0]), -1.0)


def test_distribution_validation():
    with pytest.raises(DomainError):
        DiscreteDistribution.from_probs([0.5, 0.6])
    with pytest.raises(DomainError):
        DiscreteDistribution.from_weights([0.0, 0.0])
    d = DiscreteDistribution.from_weights([1.0, 3.0])
    np.testing.assert_allclose(d.probs, [0.25, 0.75])
    assert DiscreteDistribution.uniform(4).entropy() == pytest.approx(math.log(4))


def test_hamiltonian_round_trip():
    p = DiscreteDistribution.from_probs([0.2, 0.0, 0.8])
    h = hamiltonian_from_distribution(p)
    assert log_partition(h, 1.0) == pytest.approx(0.0, abs=1e-15)
    np.testing.assert_allclose(boltzmann(h, 1.0).probs, p.probs, atol=1e-12)


def test_interpolate_end_points():
    h0, h1 = Hamiltonian([0.0, 2.0]), Hamiltonian([1.0, -1.0])
    np.testing.assert_array_equal(interpolate(h0, h1, 0.0).energies, h0.energies)
    np.testing.assert_array_equal(interpolate(h0, h1, 1.0).energies, h1.energies)
    np.testing.assert_allclose(interpolate(h0, h1, 0.25).energies, [0.25, 1.25])


def test_hamiltonian_is_immutable():
    h = Hamiltonian([0.0, 1.0])
    with pytest.raises(ValueError):
        h.energies[0] = 5.0


@settings(max_examples=200, deadline=None)
@given(energies, betas)
def test_identities_hold(e, beta):
    r = ensemble_report(Hamiltonian(e), beta)
    assert max(r.residuals().values()) < 1e-12 * max(1.0, abs(r.log_partition))
    assert -1e-12 <= r.entropy_nats <= math.log(len(e)) + 1e-12


@settings(max_examples=100, deadline=None)
@given(energies, betas, st.floats(-100, 100))
def test_shift_invariance(e, beta, c):
    h = Hamiltonian(e)
    a, b = boltzmann(h, beta), boltzmann(h.shifted(c), beta)
    np.testing.assert_allclose(a.probs, b.probs, atol=1e-12)
    assert log_partition(h.shifted(c), beta) == pytest.approx(
        log_partition(h, beta) - beta * c, abs=1e-9 * max(1.0, abs(beta * c)))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=2, max_size=16), st.floats(0.05, 20))
def test_energy_matches_finite_difference(e, beta):
    h = Hamiltonian(e)
    exact = ensemble_report(h, beta).internal_energy
    assert internal_energy_fd(h, beta) == pytest.approx(exact, rel=1e-6, abs=1e-9)
