"""Finite Boltzmann-Gibbs ensembles.

Boltzmann's constant is fixed at k = 1, so energy and temperature share
units and entropies/divergences are in nats.  Probabilities are carried as
log-probabilities and every sum of exponentials is max-shifted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError

NORMALIZATION_TOL = 1e-12


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Energy table over states ``0..m-1``.

    States with ``+inf`` energy are forbidden (zero Boltzmann weight at any
    positive temperature).  They are only accepted when ``allow_forbidden``
    is set, which is what :func:`hamiltonian_from_distribution` does for
    zero-probability states.
    """

    energies: np.ndarray
    allow_forbidden: bool = False

    def __post_init__(self):
        e = _readonly(self.energies)
        if e.size == 0:
            raise DomainError("Hamiltonian needs at least one state")
        if np.any(np.isnan(e)) or np.any(e == -np.inf):
            raise DomainError("energies must be finite (or +inf for forbidden states)")
        if not self.allow_forbidden and not np.all(np.isfinite(e)):
            raise DomainError("non-finite energy in Hamiltonian")
        if not np.any(np.isfinite(e)):
            raise DomainError("every state is forbidden")
        object.__setattr__(self, "energies", e)

    @property
    def size(self) -> int:
        return self.energies.size

    @property
    def forbidden(self) -> np.ndarray:
        return ~np.isfinite(self.energies)

    def shifted(self, c: float) -> "Hamiltonian":
        return Hamiltonian(self.energies + c, self.allow_forbidden)


def _normalize_log(lw: np.ndarray) -> np.ndarray:
    # shift by the max first so large |beta E| does not leak rounding into the total
    lw = lw - np.max(lw)
    return lw - logsumexp(lw)


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Normalized law over ``0..m-1`` stored as log-probabilities (``-inf`` = 0)."""

    log_probs: np.ndarray

    def __post_init__(self):
        lp = np.array(self.log_probs, dtype=float).reshape(-1)
        if lp.size == 0:
            raise DomainError("empty distribution")
        if np.any(np.isnan(lp)) or np.any(lp == np.inf):
            raise DomainError("log-probabilities must be finite or -inf")
        total = logsumexp(lp)
        if not abs(math.expm1(total)) <= NORMALIZATION_TOL:
            raise DomainError(f"distribution not normalized (sum = {math.exp(total)!r})")
        # absorb the admissible rounding so downstream sums are exact to eps
        lp = lp - total
        lp.setflags(write=False)
        object.__setattr__(self, "log_probs", lp)

    @classmethod
    def from_probs(cls, probs) -> "DiscreteDistribution":
        p = np.asarray(probs, dtype=float).reshape(-1)
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise DomainError("probabilities must be finite and nonnegative")
        with np.errstate(divide="ignore"):
            return cls(np.log(p))

    @classmethod
    def from_weights(cls, weights) -> "DiscreteDistribution":
        """Normalize nonnegative weights (not necessarily summing to one)."""
        w = np.asarray(weights, dtype=float).reshape(-1)
        if np.any(w < 0) or not np.all(np.isfinite(w)) or not np.any(w > 0):
            raise DomainError("weights must be finite, nonnegative, not all zero")
        with np.errstate(divide="ignore"):
            lw = np.log(w)
        return cls(_normalize_log(lw))

    @classmethod
    def uniform(cls, m: int) -> "DiscreteDistribution":
        return cls(np.full(m, -math.log(m)))

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.log_probs)

    @property
    def size(self) -> int:
        return self.log_probs.size

    def entropy(self) -> float:
        p = self.probs
        mask = p > 0
        return float(-np.dot(p[mask], self.log_probs[mask]))


@dataclass(frozen=True)
class EnsembleReport:
    beta: float
    log_partition: float
    internal_energy: float
    entropy_nats: float
    free_energy: float

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta

    def residuals(self) -> dict:
        """Absolute defects of the three thermodynamic identities."""
        b, lz, e, s, f = (self.beta, self.log_partition, self.internal_energy,
                          self.entropy_nats, self.free_energy)
        return {
            "entropy_identity": abs(s - (lz + b * e)),
            "free_energy_identity": abs(f + lz / b),
            "f_equals_e_minus_ts": abs((e - s / b) - f),
        }


def _check_beta(beta: float, *, allow_zero: bool) -> float:
    beta = float(beta)
    if not math.isfinite(beta) or beta < 0 or (beta == 0 and not allow_zero):
        raise DomainError(f"inverse temperature out of range: {beta!r}")
    return beta


def _log_weights(h: Hamiltonian, beta: float) -> np.ndarray:
    lw = np.where(h.forbidden, -np.inf, -beta * np.where(h.forbidden, 0.0, h.energies))
    return lw


def log_partition(h: Hamiltonian, beta: float) -> float:
    """``ln sum_x exp(-beta E(x))``, max-shifted."""
    beta = _check_beta(beta, allow_zero=True)
    return float(logsumexp(_log_weights(h, beta)))


def boltzmann(h: Hamiltonian, beta: float) -> DiscreteDistribution:
    beta = _check_beta(beta, allow_zero=True)
    return DiscreteDistribution(_normalize_log(_log_weights(h, beta)))


def expectation(p: DiscreteDistribution, values) -> float:
    """``sum_x P(x) f(x)`` skipping P-null states (so ``0 * inf = 0``)."""
    v = np.asarray(values, dtype=float)
    mask = p.log_probs > -np.inf
    return float(np.dot(np.exp(p.log_probs[mask]), v[mask]))


def ensemble_report(h: Hamiltonian, beta: float) -> EnsembleReport:
    beta = _check_beta(beta, allow_zero=False)
    lz = log_partition(h, beta)
    p = boltzmann(h, beta)
    e = expectation(p, h.energies)
    return EnsembleReport(
        beta=beta,
        log_partition=lz,
        internal_energy=e,
        entropy_nats=lz + beta * e,
        free_energy=-lz / beta,
    )


def internal_energy_fd(h: Hamiltonian, beta: float, step: float | None = None) -> float:
    """``-d lnZ / d beta`` by central differences.

    The default step is ``1e-4`` divided by the energy spread (when that
    exceeds one) so the truncation term, which scales with the third
    cumulant of the energy, stays below the comparison tolerance.
    """
    beta = _check_beta(beta, allow_zero=False)
    if step is None:
        finite = h.energies[np.isfinite(h.energies)]
        step = 1e-4 / max(1.0, float(np.ptp(finite)))
    step = min(step, beta / 2)
    return -(log_partition(h, beta + step) - log_partition(h, beta - step)) / (2 * step)


def interpolate(h0: Hamiltonian, h1: Hamiltonian, lam: float) -> Hamiltonian:
    """``E_lam = E_0 + lam (E_1 - E_0)`` for ``0 <= lam <= 1``."""
    if h0.size != h1.size:
        raise DomainError("Hamiltonians act on different alphabets")
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"interpolation parameter outside [0, 1]: {lam!r}")
    if lam == 0.0:
        return h0
    if lam == 1.0:
        return h1
    if np.any(h0.forbidden) or np.any(h1.forbidden):
        forbidden = h0.forbidden | h1.forbidden
        e0 = np.where(forbidden, 0.0, h0.energies)
        e1 = np.where(forbidden, 0.0, h1.energies)
        e = np.where(forbidden, np.inf, e0 + lam * (e1 - e0))
        return Hamiltonian(e, allow_forbidden=True)
    return Hamiltonian(h0.energies + lam * (h1.energies - h0.energies))


def hamiltonian_from_distribution(p: DiscreteDistribution) -> Hamiltonian:
    """``E(x) = -ln P(x)``; at beta = 1 the Boltzmann law is ``p`` and lnZ = 0."""
    e = -p.log_probs
    return Hamiltonian(e, allow_forbidden=bool(np.any(np.isinf(e))))
