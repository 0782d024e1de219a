import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infophys.dpt import (
    JointTriple,
    conditioning_reduces_entropy,
    dpt_report,
    fano_bound,
    make_markov,
)
from infophys.errors import DomainError

H2_01 = 0.32508297339144823951
BSC = [[0.9, 0.1], [0.1, 0.9]]


def brute_force(pmf):
    """Mutual informations and the conditional divergence from the raw table."""
    pmf = np.asarray(pmf)
    nx, nu, nv = pmf.shape
    px = pmf.sum(axis=(1, 2))
    pxu = pmf.sum(axis=2)
    pxv = pmf.sum(axis=1)
    pu, pv = pxu.sum(axis=0), pxv.sum(axis=0)
    i_xu = sum(pxu[x, u] * math.log(pxu[x, u] / (px[x] * pu[u]))
               for x in range(nx) for u in range(nu) if pxu[x, u] > 0)
    i_xv = sum(pxv[x, v] * math.log(pxv[x, v] / (px[x] * pv[v]))
               for x in range(nx) for v in range(nv) if pxv[x, v] > 0)
    puv = pmf.sum(axis=0)
    ediv = 0.0
    for x in range(nx):
        for u in range(nu):
            for v in range(nv):
                if pmf[x, u, v] > 0:
                    ediv += pmf[x, u, v] * math.log(
                        (pmf[x, u, v] / puv[u, v]) / (pxv[x, v] / pv[v]))
    return i_xu, i_xv, ediv


def test_bsc_example():
    r = dpt_report(make_markov([0.5, 0.5], BSC, np.eye(2)))
    assert r.i_xu == pytest.approx(math.log(2), abs=1e-14)
    assert r.gap == pytest.approx(H2_01, abs=1e-13)
    assert r.expected_divergence == pytest.approx(H2_01, abs=1e-13)
    assert r.is_markov


def test_identity_channel_has_no_gap():
    r = dpt_report(make_markov([0.3, 0.7], np.eye(2), np.eye(2)))
    assert r.gap == pytest.approx(0.0, abs=1e-15)
    assert r.expected_divergence == pytest.approx(0.0, abs=1e-15)


def test_non_markov_triple_reports_defect():
    # X = U xor V with independent fair bits: I(X;U) = I(X;V) = 0 but I(X;V|U) = ln 2
    pmf = np.zeros((2, 2, 2))
    for u in range(2):
        for v in range(2):
            pmf[u ^ v, u, v] = 0.25
    r = dpt_report(JointTriple(pmf))
    assert not r.is_markov
    assert r.markov_defect == pytest.approx(math.log(2))
    assert r.gap == pytest.approx(r.expected_divergence - r.markov_defect, abs=1e-14)


@pytest.mark.parametrize("pv,puv,pxu", [
    ([0.6, 0.6], BSC, np.eye(2)),
    ([0.5, 0.5], [[0.9, 0.2], [0.1, 0.9]], np.eye(2)),
    ([0.5, 0.5], BSC, np.eye(3)),
    ([0.5, 0.5], [[-0.1, 1.1], [0.5, 0.5]], np.eye(2)),
])
def test_make_markov_validation(pv, puv, pxu):
    with pytest.raises(DomainError):
        make_markov(pv, puv, pxu)


def test_joint_validation():
    with pytest.raises(DomainError):
        JointTriple(np.ones((2, 2)))
    with pytest.raises(DomainError):
        JointTriple(np.full((2, 2, 2), 0.2))


def stochastic(rng, rows, cols):
    return rng.dirichlet(np.full(cols, 0.5), size=rows)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
def test_gap_is_expected_divergence(seed, nx, nu, nv):
    rng = np.random.default_rng(seed)
    j = make_markov(rng.dirichlet(np.ones(nv)), stochastic(rng, nv, nu), stochastic(rng, nu, nx))
    r = dpt_report(j)
    i_xu, i_xv, ediv = brute_force(j.pmf)
    assert r.gap >= -1e-12
    assert r.gap == pytest.approx(r.expected_divergence, abs=1e-10)
    assert r.i_xu == pytest.approx(i_xu, abs=1e-12)
    assert r.i_xv == pytest.approx(i_xv, abs=1e-12)
    assert r.expected_divergence == pytest.approx(ediv, abs=1e-12)
    c = conditioning_reduces_entropy(j)
    assert c.h_x_given_uv <= c.h_x_given_v + 1e-12


def test_fano():
    assert fano_bound(100, 0.6, 0.3) == pytest.approx(1 - 0.01 - 0.5)
    assert fano_bound(10, 0.1, 0.3) == 0.0
    with pytest.raises(DomainError):
        fano_bound(0, 0.5, 0.1)
    with pytest.raises(DomainError):
        fano_bound(10, 0.0, 0.1)
