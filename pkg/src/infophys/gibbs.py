"""Information inequality and its free-energy readings."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import logsumexp

from .ensemble import (
    DiscreteDistribution,
    Hamiltonian,
    boltzmann,
    ensemble_report,
    expectation,
)
from .errors import DomainError

CLAMP_TOL = 1e-14
IDENTITY_TOL = 1e-12


def relative_entropy(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """``D(P||Q)`` in nats; ``+inf`` when P charges a Q-null state."""
    if p.size != q.size:
        raise DomainError("distributions live on different alphabets")
    mask = p.log_probs > -np.inf
    lq = q.log_probs[mask]
    if np.any(lq == -np.inf):
        return math.inf
    lp = p.log_probs[mask]
    d = float(np.dot(np.exp(lp), lp - lq))
    return d if d > CLAMP_TOL else 0.0


def binary_entropy(p: float) -> float:
    """``h2(p)`` in nats with ``0 ln 0 = 0``."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability outside [0, 1]: {p!r}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log(p) - (1.0 - p) * math.log1p(-p)


class LogSumReport(NamedTuple):
    lhs: float
    rhs: float
    slack: float


def log_sum_inequality(a, b) -> LogSumReport:
    """Both sides of ``sum a_i ln(a_i/b_i) >= (sum a) ln(sum a / sum b)``.

    The slack is checked against ``(sum a) D(a/sum a || b/sum b)``.
    """
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.size != b.size or a.size == 0:
        raise DomainError("sequences must be nonempty and of equal length")
    if np.any(a < 0) or np.any(b < 0):
        raise DomainError("log-sum inequality needs nonnegative sequences")
    sa, sb = float(a.sum()), float(b.sum())
    if sb <= 0:
        raise DomainError("sum of b must be positive")
    charged = a > 0
    if np.any(b[charged] == 0):
        return LogSumReport(math.inf, _lsi_rhs(sa, sb), math.inf)
    lhs = float(np.dot(a[charged], np.log(a[charged] / b[charged])))
    rhs = _lsi_rhs(sa, sb)
    slack = lhs - rhs
    if sa > 0:
        d = relative_entropy(DiscreteDistribution.from_weights(a),
                             DiscreteDistribution.from_weights(b))
        scale = max(1.0, abs(lhs), abs(rhs))
        if abs(slack - sa * d) > IDENTITY_TOL * scale:
            raise ArithmeticError(
                f"log-sum slack {slack!r} disagrees with scaled divergence {sa * d!r}")
    return LogSumReport(lhs, rhs, slack)


def _lsi_rhs(sa: float, sb: float) -> float:
    return 0.0 if sa == 0 else sa * math.log(sa / sb)


@dataclass(frozen=True)
class GibbsDecomposition:
    """Average work of an abrupt switch split into ΔF plus dissipation (energy units)."""

    avg_work: float
    delta_f: float
    dissipation: float
    divergence_nats: float
    beta: float

    @property
    def residual(self) -> float:
        return self.avg_work - self.delta_f - self.dissipation


def free_energy_difference(h0: Hamiltonian, h1: Hamiltonian, beta: float) -> float:
    """``F1 - F0 = -(1/beta) ln E_0[exp(-beta W)]`` with ``W = E1 - E0``.

    Equal to ``(lnZ0 - lnZ1)/beta`` but evaluated as one log-expectation so
    the cancellation between the two partition functions never happens.
    """
    p0 = boltzmann(h0, beta)
    w = _work_values(h0, h1)
    mask = p0.log_probs > -np.inf
    if np.any(np.isinf(w[mask])):
        return math.inf
    return -float(logsumexp(p0.log_probs[mask] - beta * w[mask])) / beta


def _work_values(h0: Hamiltonian, h1: Hamiltonian) -> np.ndarray:
    if h0.size != h1.size:
        raise DomainError("Hamiltonians act on different alphabets")
    with np.errstate(invalid="ignore"):
        w = h1.energies - h0.energies
    # states forbidden under h0 never carry P0 weight; their value is irrelevant
    return np.where(h0.forbidden, 0.0, w)


def gibbs_decomposition(h0: Hamiltonian, h1: Hamiltonian, beta: float) -> GibbsDecomposition:
    """Abrupt switch ``E0 -> E1`` at fixed ``beta`` with the microstate frozen.

    ``avg_work = E_0[E1 - E0]``, ``delta_f = F1 - F0`` and the dissipation is
    ``D(P0||P1)/beta``; all three are evaluated independently and the
    identity ``avg_work = delta_f + dissipation`` is then verified.
    """
    beta = float(beta)
    if not beta > 0 or not math.isfinite(beta):
        raise DomainError(f"beta must be positive: {beta!r}")
    w = _work_values(h0, h1)
    p0 = boltzmann(h0, beta)
    p1 = boltzmann(h1, beta)
    avg_work = expectation(p0, w)
    delta_f = free_energy_difference(h0, h1, beta)
    div = relative_entropy(p0, p1)
    out = GibbsDecomposition(avg_work, delta_f, div / beta, div, beta)
    if math.isfinite(div):
        scale = max(1.0, abs(avg_work), abs(delta_f))
        if abs(out.residual) > 10 * IDENTITY_TOL * scale:
            raise ArithmeticError(f"Gibbs identity violated by {out.residual!r}")
    return out


@dataclass(frozen=True)
class AdiabaticReport:
    delta_sigma: float
    heat_over_kT1: float
    slack: float
    divergence_nats: float


def adiabatic_clausius(h: Hamiltonian, beta0: float, beta1: float,
                       allow_cooling: bool = False) -> AdiabaticReport:
    """Swap a bath at ``beta0`` for one at ``beta1`` with no mechanical work.

    The entropy change exceeds the heat intake over ``T1`` by exactly
    ``D(P_beta0 || P_beta1)``.  Heating (``beta1 <= beta0``) is the default
    setting; cooling must be requested explicitly.
    """
    if not (beta0 > 0 and beta1 > 0):
        raise DomainError("inverse temperatures must be positive")
    if beta1 > beta0 and not allow_cooling:
        raise DomainError("beta1 > beta0 is a cooling step; pass allow_cooling=True")
    r0 = ensemble_report(h, beta0)
    r1 = ensemble_report(h, beta1)
    delta_sigma = r1.entropy_nats - r0.entropy_nats
    heat = beta1 * (r1.internal_energy - r0.internal_energy)
    div = relative_entropy(boltzmann(h, beta0), boltzmann(h, beta1))
    return AdiabaticReport(delta_sigma, heat, delta_sigma - heat, div)
