import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infophys.ensemble import Hamiltonian
from infophys.errors import DomainError
from infophys.exponents import TiltedFamily
from infophys.gibbs import gibbs_decomposition
from infophys.protocol import (
    ProtocolSchedule,
    dissipation_vs_steps,
    golden_section,
    loglog_slope,
    optimize_schedule,
    protocol_work,
    sample_work,
    work_as_exponent_integral,
)

H0 = Hamiltonian([0.0, 0.0])
H1 = Hamiltonian([0.0, 1.0])


def test_schedule_validation():
    assert ProtocolSchedule.uniform(4).breakpoints == (0.0, 0.25, 0.5, 0.75, 1.0)
    for bad in [(0.0,), (0.1, 1.0), (0.0, 0.5, 0.5, 1.0), (0.0, 0.9)]:
        with pytest.raises(DomainError):
            ProtocolSchedule(bad)
    with pytest.raises(DomainError):
        ProtocolSchedule.uniform(0)


def test_single_jump_is_gibbs():
    w = protocol_work(H0, H1, 1.0, ProtocolSchedule.uniform(1))
    g = gibbs_decomposition(H0, H1, 1.0)
    assert w.avg_work == g.avg_work
    assert w.dissipation == g.dissipation
    # one jump from uniform over a unit gap: work is 0 or 1 with equal odds
    assert w.work_variance == pytest.approx(0.25)


def test_jarzynski_reference():
    w = protocol_work(H0, H1, 1.0, ProtocolSchedule.uniform(8))
    assert w.jarzynski_gap < 1e-12
    assert w.jarzynski_rhs == pytest.approx((1 + math.exp(-1)) / 2, abs=1e-15)
    assert math.fsum(w.jump_delta_f) == pytest.approx(w.delta_f, abs=1e-14)


def test_dissipation_falls_as_one_over_k():
    table = dissipation_vs_steps(H0, H1, 1.0, [2 ** j for j in range(9)])
    values = [table[k] for k in sorted(table)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert loglog_slope(table) == pytest.approx(-1.0, abs=0.1)


def test_sampled_work_matches_exact_mean():
    s = ProtocolSchedule.uniform(4)
    w = protocol_work(H0, H1, 1.0, s)
    draws = sample_work(H0, H1, 1.0, s, np.random.default_rng(7), 200_000)
    assert draws.mean() == pytest.approx(w.avg_work, abs=5 * math.sqrt(w.work_variance / 2e5))
    assert draws.var() == pytest.approx(w.work_variance, rel=0.05)
    assert np.mean(np.exp(-draws)) == pytest.approx(w.jarzynski_rhs, rel=0.01)


def test_work_as_exponent_integral():
    f = TiltedFamily.bernoulli(0.1, 0.4)
    for k in (1, 3, 16):
        work, integral = work_as_exponent_integral(f, ProtocolSchedule.uniform(k))
        assert work == pytest.approx(integral, abs=1e-12)


def test_golden_section():
    assert golden_section(lambda x: (x - 0.3) ** 2, 0.0, 1.0) == pytest.approx(0.3, abs=1e-6)


def test_optimizer_never_worse_than_uniform():
    h1 = Hamiltonian([0.0, 3.0, -1.0])
    h0 = Hamiltonian([0.5, 0.0, 2.0])
    for k in (1, 2, 4):
        s = optimize_schedule(h0, h1, 2.0, k)
        assert s.jumps == k
        best = protocol_work(h0, h1, 2.0, s).dissipation
        uniform = protocol_work(h0, h1, 2.0, ProtocolSchedule.uniform(k)).dissipation
        assert best <= uniform + 1e-15


def test_rejects_mismatched_or_forbidden():
    with pytest.raises(DomainError):
        protocol_work(H0, Hamiltonian([0.0, 1.0, 2.0]), 1.0, ProtocolSchedule.uniform(2))
    with pytest.raises(DomainError):
        protocol_work(H0, Hamiltonian([0.0, math.inf], allow_forbidden=True), 1.0,
                      ProtocolSchedule.uniform(2))
    with pytest.raises(DomainError):
        protocol_work(H0, H1, 0.0, ProtocolSchedule.uniform(2))


schedules = st.lists(st.floats(0.01, 1.0), min_size=1, max_size=32).map(
    lambda w: ProtocolSchedule((0.0, *np.cumsum(w)[:-1] / sum(w), 1.0)))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 16).flatmap(lambda m: st.tuples(
    st.lists(st.floats(-1, 1), min_size=m, max_size=m),
    st.lists(st.floats(-1, 1), min_size=m, max_size=m))), st.floats(0.1, 2.0), schedules)
def test_jarzynski_identity(es, beta, s):
    w = protocol_work(Hamiltonian(es[0]), Hamiltonian(es[1]), beta, s)
    assert w.jarzynski_gap < 1e-12
    assert w.dissipation >= 0
    assert w.avg_work - w.delta_f == pytest.approx(w.dissipation, abs=1e-12)
