"""Adiabatic worked models: Gaussian and binary-symmetric degraded broadcast channels.

Temperatures and energies share units (k = 1); heat capacities are in units of k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .errors import DomainError
from .gibbs import binary_entropy
from .quadrature import DEFAULT_TOL, adaptive_simpson


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0 or math.isnan(value):
        raise DomainError(f"{name} must be positive: {value!r}")
    return value


@dataclass(frozen=True)
class GaussianBroadcast:
    """Cascade ``V -> U -> X``: ``U`` sees noise variance ``1/beta0``, ``X`` sees ``1/beta1``.

    ``beta1 == beta0`` (no second stage) is accepted as the degenerate cascade.
    """

    beta0: float
    beta1: float
    sigma2_v: float = 1.0

    def __post_init__(self):
        _positive("beta0", self.beta0)
        _positive("beta1", self.beta1)
        if self.beta1 > self.beta0:
            raise DomainError("degraded output needs beta1 <= beta0")
        if not self.sigma2_v >= 0:
            raise DomainError("variance of V must be nonnegative")

    @property
    def t0(self) -> float:
        return 1.0 / self.beta0

    @property
    def t1(self) -> float:
        return 1.0 / self.beta1


def gaussian_entropy_increase(g: GaussianBroadcast) -> float:
    """``h(X|V) - h(X|U) = 0.5 ln(beta0/beta1)`` nats, whatever the law of V."""
    return 0.5 * math.log(g.beta0 / g.beta1)


def gaussian_mmse(sigma2: float, beta: float) -> float:
    """MMSE of a Gaussian ``V`` with variance ``sigma2`` seen at SNR ``beta``."""
    if sigma2 < 0:
        raise DomainError("variance must be nonnegative")
    beta = _positive("beta", beta)
    if math.isinf(sigma2):
        return 1.0 / beta
    return sigma2 / (1.0 + beta * sigma2)


def immse_entropy_increase(g: GaussianBroadcast) -> float:
    """``I(U;V) - I(X;V)`` for Gaussian ``V``: ``0.5 ln((1 + beta0 s2)/(1 + beta1 s2))``.

    ``sigma2_v == 0`` returns 0 (the continuous limit).
    """
    s2 = g.sigma2_v
    if s2 == 0:
        return 0.0
    if math.isinf(s2):
        return gaussian_entropy_increase(g)
    return 0.5 * (math.log1p(g.beta0 * s2) - math.log1p(g.beta1 * s2))


class ImmseCheck(NamedTuple):
    closed_form: float
    quadrature: float
    mi_difference: float

    @property
    def max_disagreement(self) -> float:
        vals = (self.closed_form, self.quadrature, self.mi_difference)
        return max(vals) - min(vals)


def gaussian_mutual_information(sigma2: float, beta: float) -> float:
    """``I(V; V + N/sqrt(beta))`` in nats for Gaussian ``V``."""
    return 0.5 * math.log1p(beta * sigma2)


def immse_check(g: GaussianBroadcast, tol: float = DEFAULT_TOL) -> ImmseCheck:
    """Closed form vs ``0.5 * int mmse dbeta`` vs difference of channel MIs."""
    s2 = g.sigma2_v
    quad = 0.5 * adaptive_simpson(lambda b: gaussian_mmse(s2, b), g.beta1, g.beta0, tol)
    mi = gaussian_mutual_information(s2, g.beta0) - gaussian_mutual_information(s2, g.beta1)
    return ImmseCheck(immse_entropy_increase(g), quad, mi)


def gaussian_heat_capacity(sigma2: float, temperature: float) -> float:
    """``sigma2 / (2 (sigma2 + T))``; ``sigma2 = inf`` gives the constant 1/2."""
    t = _positive("temperature", temperature)
    if sigma2 < 0:
        raise DomainError("variance must be nonnegative")
    if math.isinf(sigma2):
        return 0.5
    return sigma2 / (2.0 * (sigma2 + t))


def bsc_crossover(e0: float, beta: float) -> float:
    """Crossover ``exp(-beta E0) / (1 + exp(-beta E0))`` of a two-level noise bit."""
    x = _positive("E0", e0) * _positive("beta", beta)
    return math.exp(-x) / (1.0 + math.exp(-x))


@dataclass(frozen=True)
class BscBroadcast:
    """Binary cascade whose noise bits are two-level Boltzmann laws at beta0 and beta1."""

    energy_e0: float
    beta0: float
    beta1: float

    def __post_init__(self):
        _positive("E0", self.energy_e0)
        _positive("beta0", self.beta0)
        _positive("beta1", self.beta1)
        if self.beta1 > self.beta0:
            raise DomainError("degraded output needs beta1 <= beta0")

    @property
    def eps0(self) -> float:
        return bsc_crossover(self.energy_e0, self.beta0)

    @property
    def eps1(self) -> float:
        return bsc_crossover(self.energy_e0, self.beta1)

    @property
    def eps2(self) -> float:
        """Crossover of the second stage ``U -> V``."""
        return degrade_crossover(self.eps0, self.eps1)


def bsc_entropy_increase(b: BscBroadcast) -> float:
    """``H(X|V) - H(X|U) = h2(eps1) - h2(eps0)`` nats."""
    return binary_entropy(b.eps1) - binary_entropy(b.eps0)


def bsc_heat_capacity(e0: float, temperature: float) -> float:
    """Schottky heat capacity of a two-level system with gap ``E0``."""
    t = _positive("temperature", temperature)
    x = _positive("E0", e0) / t
    # x > 0, so e^{-x} can only underflow
    e = math.exp(-x)
    return x * x * e / (1.0 + e) ** 2


class HeatCapacityCheck(NamedTuple):
    integral: float
    abs_err: float


def heat_capacity_check(c: Callable[[float], float], t0: float, t1: float,
                        target: float, tol: float = DEFAULT_TOL) -> HeatCapacityCheck:
    """Entropy change ``int_{t0}^{t1} C(T)/T dT`` compared with ``target``."""
    if not 0 < t0 < t1:
        raise DomainError("need 0 < t0 < t1")
    integral = adaptive_simpson(lambda t: c(t) / t, t0, t1, tol)
    return HeatCapacityCheck(integral, abs(integral - target))


def star(a: float, b: float) -> float:
    """Crossover of two cascaded binary symmetric channels."""
    return a * (1.0 - b) + b * (1.0 - a)


def degrade_crossover(eps0: float, eps1: float) -> float:
    """Second-stage crossover ``eps2`` with ``star(eps0, eps2) == eps1``."""
    if not (0.0 <= eps0 <= 0.5 and 0.0 <= eps1 <= 0.5):
        raise DomainError("crossovers must lie in [0, 1/2]")
    if eps1 < eps0:
        raise DomainError("eps1 < eps0: the far channel is not a degradation")
    if eps0 == 0.5:
        if eps1 != 0.5:
            raise DomainError("eps0 = 1/2 can only be degraded to 1/2")
        return 0.0
    return (eps1 - eps0) / (1.0 - 2.0 * eps0)
