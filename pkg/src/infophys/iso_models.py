"""Isothermal worked models: mismatched Ising-chain coding and run-length coding.

Spins are indexed with ``-1 -> 0`` and ``+1 -> 1``.  Both models are at
beta = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import logsumexp

from .ensemble import Hamiltonian
from .errors import DomainError, UnsupportedSizeError
from .gibbs import GibbsDecomposition, gibbs_decomposition

SPINS = np.array([-1.0, 1.0])
EXACT_MAX_N = 20


def log_cosh(x: float) -> float:
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)


@dataclass(frozen=True)
class IsingMismatch:
    """Source chain with coupling ``J``; code built for coupling ``J`` plus field ``K``.

    ``initial_up`` is the probability that the boundary spin ``x0`` is +1;
    the default 0.5 is the stationary law of the source chain.
    """

    coupling_J: float
    field_K: float
    length_n: int
    initial_up: float = 0.5

    def __post_init__(self):
        if not (math.isfinite(self.coupling_J) and math.isfinite(self.field_K)):
            raise DomainError("J and K must be finite")
        if int(self.length_n) != self.length_n or self.length_n < 1:
            raise DomainError("chain length must be a positive integer")
        if not 0.0 <= self.initial_up <= 1.0:
            raise DomainError("initial_up must be a probability")

    @property
    def initial_law(self) -> np.ndarray:
        return np.array([1.0 - self.initial_up, self.initial_up])


class IsingKernels(NamedTuple):
    p0: np.ndarray  # p0[prev, cur] = P0(cur | prev)
    p1: np.ndarray
    z0: float
    z1: float
    zeta: np.ndarray  # zeta[prev], branch form


def zeta_unified(J: float, K: float, spin: float) -> float:
    """``Z1 * (cosh(J+K)/cosh(J-K))**(spin/2)``, computed in logs."""
    lz1 = math.log(2.0) + 0.5 * (log_cosh(J + K) + log_cosh(J - K))
    return math.exp(lz1 + 0.5 * spin * (log_cosh(J + K) - log_cosh(J - K)))


def ising_kernels(J: float, K: float) -> IsingKernels:
    prev = SPINS[:, None]
    cur = SPINS[None, :]
    log_zeta = np.array([math.log(2.0) + log_cosh(J - K),
                         math.log(2.0) + log_cosh(J + K)])
    lz0 = math.log(2.0) + log_cosh(J)
    p0 = np.exp(J * cur * prev - lz0)
    p1 = np.exp(J * cur * prev + K * cur - log_zeta[:, None])
    z1 = 2.0 * math.exp(0.5 * (log_cosh(J + K) + log_cosh(J - K)))
    return IsingKernels(p0, p1, math.exp(lz0), z1, np.exp(log_zeta))


def _edge_coefficient(J: float, K: float) -> float:
    return 0.5 * (log_cosh(J - K) - log_cosh(J + K))


def effective_field(J: float, K: float) -> float:
    """Uniform field ``B`` of the mismatched code once boundary terms are dropped."""
    return K + _edge_coefficient(J, K)


class IsingRedundancy(NamedTuple):
    total_nats: float
    per_symbol_rate: float
    edge_residual: float


def _step_divergences(J: float, K: float) -> np.ndarray:
    """``D(P0(.|x') || P1(.|x'))`` for ``x' = -1, +1``."""
    k = ising_kernels(J, K)
    with np.errstate(divide="ignore"):
        return np.sum(k.p0 * (np.log(k.p0) - np.log(k.p1)), axis=1)


def ising_redundancy(m: IsingMismatch) -> IsingRedundancy:
    """Exact ``D(P0^n || P1^n)`` by one pass along the chain.

    Both laws share the boundary spin ``x0`` (drawn from ``m.initial_law``),
    so the divergence is the sum over steps of the expected per-step
    conditional divergence under the source marginal.
    """
    J, K = m.coupling_J, m.field_K
    d = _step_divergences(J, K)
    p0 = ising_kernels(J, K).p0
    marginal = m.initial_law
    terms = []
    for _ in range(m.length_n):
        terms.append(float(marginal @ d))
        marginal = marginal @ p0
    total = math.fsum(terms)
    # source chain is symmetric, so its stationary law is uniform
    rate = 0.5 * float(d.sum())
    return IsingRedundancy(total, rate, total - m.length_n * rate)


def ising_bruteforce_divergence(m: IsingMismatch) -> float:
    """Divergence by enumerating all ``2**n`` continuations of each boundary spin."""
    if m.length_n > 16:
        raise UnsupportedSizeError("exhaustive enumeration limited to n <= 16")
    k = ising_kernels(m.coupling_J, m.field_K)
    total = 0.0
    for s0, w0 in enumerate(m.initial_law):
        if w0 == 0:
            continue
        acc = 0.0
        for seq in np.ndindex(*(2,) * m.length_n):
            a = b = 1.0
            prev = s0
            for s in seq:
                a *= k.p0[prev, s]
                b *= k.p1[prev, s]
                prev = s
            acc += a * math.log(a / b)
        total += w0 * acc
    return total


def _configurations(n: int) -> np.ndarray:
    """All spin configurations ``(x0, x1..xn)`` as rows of +-1, x0 first."""
    idx = np.arange(2 ** (n + 1))
    bits = (idx[:, None] >> np.arange(n, -1, -1)) & 1
    return 2.0 * bits - 1.0


class IsingHamiltonians(NamedTuple):
    h0: Hamiltonian
    h1: Hamiltonian
    h1_approx: Hamiltonian


def ising_hamiltonians(m: IsingMismatch) -> IsingHamiltonians:
    """Energies over ``(x0, x1..xn)`` at beta = 1.

    ``h0 = -n lnZ0 - sum ln P0`` and ``h1 = -n lnZ1 - sum ln P1`` exactly, plus
    ``-ln P(x0)`` on both so the shared boundary law is part of each
    ensemble; ``h1_approx`` replaces the boundary-sensitive term of ``h1``
    with the uniform field ``B``.
    """
    n = m.length_n
    if n > EXACT_MAX_N:
        raise UnsupportedSizeError(f"exact product-space path limited to n <= {EXACT_MAX_N}")
    J, K = m.coupling_J, m.field_K
    x = _configurations(n)
    bond = np.sum(x[:, 1:] * x[:, :-1], axis=1)
    field = np.sum(x[:, 1:], axis=1)
    prev_field = np.sum(x[:, :-1], axis=1)
    c = _edge_coefficient(J, K)
    with np.errstate(divide="ignore"):
        boundary = -np.log(np.where(x[:, 0] > 0, m.initial_law[1], m.initial_law[0]))
    forbidden = bool(np.any(np.isinf(boundary)))
    e0 = boundary - J * bond
    e1 = boundary - J * bond - K * field - c * prev_field
    e1_approx = boundary - J * bond - effective_field(J, K) * field
    return IsingHamiltonians(Hamiltonian(e0, forbidden), Hamiltonian(e1, forbidden),
                             Hamiltonian(e1_approx, forbidden))


class IsingWork(NamedTuple):
    decomposition: GibbsDecomposition
    bulk_delta_f: float
    approx_delta_f: float
    edge_correction: float


def ising_work_decomposition(m: IsingMismatch) -> IsingWork:
    """Gibbs decomposition of abruptly switching on the mismatch field.

    For ``n <= 20`` the full product-space Hamiltonians go through
    :func:`gibbs_decomposition`.  Beyond that the streaming path uses
    ``W = -B sum x_i + c (x_n - x_0)`` with the chain marginals.
    ``edge_correction`` is the free-energy difference between the exact
    mismatched Hamiltonian and its uniform-field approximation.
    """
    J, K, n = m.coupling_J, m.field_K, m.length_n
    lz0 = math.log(2.0) + log_cosh(J)
    lz1 = math.log(2.0) + 0.5 * (log_cosh(J + K) + log_cosh(J - K))
    bulk = n * (lz0 - lz1)
    if n <= EXACT_MAX_N:
        hams = ising_hamiltonians(m)
        dec = gibbs_decomposition(hams.h0, hams.h1, 1.0)
        approx = gibbs_decomposition(hams.h0, hams.h1_approx, 1.0).delta_f
    else:
        red = ising_redundancy(m)
        b = effective_field(J, K)
        c = _edge_coefficient(J, K)
        p0 = ising_kernels(J, K).p0
        marginal = m.initial_law
        mean0 = float(marginal @ SPINS)
        sums = []
        for _ in range(n):
            marginal = marginal @ p0
            sums.append(float(marginal @ SPINS))
        avg_work = -b * math.fsum(sums) + c * (sums[-1] - mean0)
        dec = GibbsDecomposition(avg_work, bulk, red.total_nats, red.total_nats, 1.0)
        approx = _approx_delta_f_transfer(m)
    return IsingWork(dec, bulk, approx, approx - dec.delta_f)


def _approx_delta_f_transfer(m: IsingMismatch) -> float:
    """ΔF of ``h0 -> h1_approx`` by a log-domain transfer-matrix sweep."""
    J, n = m.coupling_J, m.length_n
    b = effective_field(J, m.field_K)
    bond = J * SPINS[:, None] * SPINS[None, :]
    with np.errstate(divide="ignore"):
        init = np.log(m.initial_law)

    def log_z(extra: np.ndarray) -> float:
        v = init.copy()
        for _ in range(n):
            v = logsumexp(v[:, None] + bond + extra[None, :], axis=0)
        return float(logsumexp(v))

    return log_z(np.zeros(2)) - log_z(b * SPINS)


@dataclass(frozen=True)
class RunLengthModel:
    """Geometric run lengths with ``Pr{N = n} = exp(mu n) / Xi(mu)``."""

    mu: float

    def __post_init__(self):
        if not self.mu < 0:
            raise DomainError(f"chemical potential must be negative: {self.mu!r}")


class RunLengthLaw(NamedTuple):
    xi: float
    mean_run: float


def log_grand_partition(mu: float) -> float:
    """``ln Xi(mu) = -ln(1 - e^mu)``: the pressure at V = 1, beta = 1."""
    RunLengthModel(mu)
    return -math.log(-math.expm1(mu))


def runlength_law(r: RunLengthModel) -> RunLengthLaw:
    xi = -1.0 / math.expm1(r.mu)
    return RunLengthLaw(xi, math.exp(r.mu) * xi)


def runlength_pmf(r: RunLengthModel, n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1)
    return np.exp(r.mu * n + math.log(-math.expm1(r.mu)))


class RunLengthRedundancy(NamedTuple):
    divergence: float
    pressure_slack: float
    series_divergence: float


def _series_terms_needed(mu0: float, mu1: float) -> int:
    # tail mass exp(mu0 (N+1)) times the largest neglected log-ratio stays
    # far below double-precision resolution of the sum
    log_tail = math.log(1e-20)
    n = int(math.ceil(log_tail / mu0))
    return n + int(math.ceil(math.log1p(n * abs(mu0 - mu1)) / -mu0))


def runlength_redundancy(mu0: float, mu1: float) -> RunLengthRedundancy:
    """Mismatch cost of run-length coding with ``mu1`` when runs follow ``mu0``.

    ``divergence`` is the closed form, ``series_divergence`` a truncated sum
    over run lengths, and ``pressure_slack`` the grand-canonical form
    ``P1 - P0 - (mu1 - mu0) E0{rho}``.
    """
    r0, r1 = RunLengthModel(mu0), RunLengthModel(mu1)
    lxi0, lxi1 = log_grand_partition(mu0), log_grand_partition(mu1)
    mean0 = runlength_law(r0).mean_run
    closed = lxi1 - lxi0 + (mu0 - mu1) * mean0
    n = np.arange(_series_terms_needed(mu0, mu1) + 1)
    lp0 = mu0 * n - lxi0
    lp1 = mu1 * n - lxi1
    series = math.fsum(np.exp(lp0) * (lp0 - lp1))
    # expm1 keeps 1 - e^mu accurate as mu -> 0
    p0_pressure = -math.log(-math.expm1(r0.mu))
    p1_pressure = -math.log(-math.expm1(r1.mu))
    density = -math.exp(mu0) / math.expm1(mu0)
    slack = p1_pressure - p0_pressure - (mu1 - mu0) * density
    return RunLengthRedundancy(max(closed, 0.0), slack, series)
