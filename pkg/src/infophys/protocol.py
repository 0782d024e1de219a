"""Work accounting for staircase protocols ``lambda_0 = 0 < ... < lambda_K = 1``.

Dynamics model: jump-then-equilibrate.  Before each jump the system is in
equilibrium with ``interpolate(h0, h1, lambda_k)``; the jump injects
``(lambda_{k+1} - lambda_k) (E1(x) - E0(x))`` at the current microstate and
the system then fully re-equilibrates.  Under this model the Jarzynski
average is an exact telescoping product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .ensemble import (
    Hamiltonian,
    boltzmann,
    expectation,
    hamiltonian_from_distribution,
    interpolate,
)
from .errors import DomainError
from .exponents import TiltedFamily, exponent_pair
from .gibbs import free_energy_difference, relative_entropy

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ProtocolSchedule:
    breakpoints: tuple

    def __post_init__(self):
        bp = tuple(float(x) for x in self.breakpoints)
        if len(bp) < 2 or bp[0] != 0.0 or bp[-1] != 1.0:
            raise DomainError("schedule must start at 0 and end at 1")
        if any(b <= a for a, b in zip(bp, bp[1:])):
            raise DomainError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bp)

    @classmethod
    def uniform(cls, k: int) -> "ProtocolSchedule":
        if k < 1:
            raise DomainError("need at least one jump")
        return cls(tuple(j / k for j in range(k + 1)))

    @property
    def jumps(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def steps(self) -> np.ndarray:
        return np.diff(self.breakpoints)


@dataclass(frozen=True)
class WorkReport:
    avg_work: float
    delta_f: float
    dissipation: float
    jarzynski_lhs: float
    jarzynski_rhs: float
    log_jarzynski_lhs: float
    log_jarzynski_rhs: float
    work_variance: float
    jump_work: tuple
    jump_delta_f: tuple

    @property
    def jarzynski_gap(self) -> float:
        return abs(self.jarzynski_lhs - self.jarzynski_rhs)


def _check(h0: Hamiltonian, h1: Hamiltonian, beta: float) -> np.ndarray:
    if h0.size != h1.size:
        raise DomainError("Hamiltonians act on different alphabets")
    if not (beta > 0 and math.isfinite(beta)):
        raise DomainError(f"beta must be positive: {beta!r}")
    if np.any(h0.forbidden) or np.any(h1.forbidden):
        raise DomainError("protocol work needs finite energies on every state")
    return h1.energies - h0.energies


def protocol_work(h0: Hamiltonian, h1: Hamiltonian, beta: float,
                  s: ProtocolSchedule) -> WorkReport:
    """Mean work, ΔF and the exact Jarzynski average along a staircase protocol.

    The left side of the Jarzynski equality is the product over jumps of
    ``E_{lambda_k}[exp(-beta dlam_k W)]``; the right side is ``exp(-beta ΔF)``
    with ΔF taken directly between the end points.  Each jump dissipates
    ``D(P_lambda_k || P_lambda_{k+1}) / beta``; summing those avoids the
    cancellation in ``avg_work - delta_f``.
    """
    w = _check(h0, h1, beta)
    lams = s.breakpoints
    jump_work = []
    log_factors = []
    divergences = []
    variance = 0.0
    p = boltzmann(h0, beta)
    for lam, dlam in zip(lams[1:], s.steps.tolist()):
        mean = expectation(p, w)
        jump_work.append(dlam * mean)
        log_factors.append(float(logsumexp(p.log_probs - beta * dlam * w)))
        variance += dlam ** 2 * expectation(p, (w - mean) ** 2)
        nxt = boltzmann(h1 if lam == 1.0 else interpolate(h0, h1, lam), beta)
        divergences.append(relative_entropy(p, nxt))
        p = nxt
    avg_work = math.fsum(jump_work)
    delta_f = free_energy_difference(h0, h1, beta)
    log_lhs = math.fsum(log_factors)
    log_rhs = -beta * delta_f
    jump_df = tuple(-lf / beta for lf in log_factors)
    return WorkReport(
        avg_work=avg_work,
        delta_f=delta_f,
        dissipation=math.fsum(divergences) / beta,
        jarzynski_lhs=math.exp(log_lhs) if log_lhs < 709 else math.inf,
        jarzynski_rhs=math.exp(log_rhs) if log_rhs < 709 else math.inf,
        log_jarzynski_lhs=log_lhs,
        log_jarzynski_rhs=log_rhs,
        work_variance=variance,
        jump_work=tuple(jump_work),
        jump_delta_f=jump_df,
    )


def sample_work(h0: Hamiltonian, h1: Hamiltonian, beta: float, s: ProtocolSchedule,
                rng: np.random.Generator, n_samples: int) -> np.ndarray:
    """Monte Carlo draws of the total work under the jump-then-equilibrate model."""
    w = _check(h0, h1, beta)
    total = np.zeros(n_samples)
    for lam, dlam in zip(s.breakpoints[:-1], s.steps.tolist()):
        p = boltzmann(interpolate(h0, h1, lam), beta).probs
        x = rng.choice(w.size, size=n_samples, p=p / p.sum())
        total += dlam * w[x]
    return total


def dissipation_vs_steps(h0: Hamiltonian, h1: Hamiltonian, beta: float,
                         k_values) -> dict:
    """Dissipation of uniform ``K``-jump schedules, keyed by ``K``."""
    return {int(k): protocol_work(h0, h1, beta, ProtocolSchedule.uniform(int(k))).dissipation
            for k in k_values}


def loglog_slope(table: dict, k_min: int = 16, k_max: int = 256) -> float:
    """Least-squares slope of ``ln(dissipation)`` against ``ln K`` on ``[k_min, k_max]``."""
    ks = np.array([k for k in sorted(table) if k_min <= k <= k_max], dtype=float)
    ds = np.array([table[int(k)] for k in ks])
    if ks.size < 2 or np.any(ds <= 0):
        raise DomainError("slope needs at least two positive dissipations in range")
    return float(np.polyfit(np.log(ks), np.log(ds), 1)[0])


def work_as_exponent_integral(f: TiltedFamily, s: ProtocolSchedule) -> tuple[float, float]:
    """Protocol work for ``E_i = -ln P_i`` at beta = 1, and ``sum dlam (e1 - e0)``.

    Both partition functions equal one, so ΔF = 0 and the work is pure dissipation.
    """
    h0 = hamiltonian_from_distribution(f.p0)
    h1 = hamiltonian_from_distribution(f.p1)
    work = protocol_work(h0, h1, 1.0, s).avg_work
    terms = []
    for lam, dlam in zip(s.breakpoints[:-1], s.steps.tolist()):
        ex = exponent_pair(f, lam)
        terms.append(dlam * (ex.e1 - ex.e0))
    return work, math.fsum(terms)


def golden_section(fn, lo: float, hi: float, tol: float = 1e-12,
                   max_iter: int = 200) -> float:
    """Minimizer of a unimodal ``fn`` on ``[lo, hi]``."""
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fn(d)
    return c if fc <= fd else d


def optimize_schedule(h0: Hamiltonian, h1: Hamiltonian, beta: float, k: int,
                      max_sweeps: int = 200, rel_tol: float = 1e-12) -> ProtocolSchedule:
    """Coordinate descent on the interior breakpoints of a ``K``-jump schedule.

    Starts from the uniform schedule; each breakpoint is moved by golden
    section inside its neighbours and a move is kept only if it lowers the
    mean work, so the result never does worse than uniform.
    """
    w = _check(h0, h1, beta)
    pts = list(ProtocolSchedule.uniform(k).breakpoints)
    if k == 1:
        return ProtocolSchedule(tuple(pts))

    def mean_w(lam: float) -> float:
        return expectation(boltzmann(interpolate(h0, h1, lam), beta), w)

    def local_work(i: int, x: float) -> float:
        # work contributed by the two jumps touching breakpoint i
        return (x - pts[i - 1]) * mean_w(pts[i - 1]) + (pts[i + 1] - x) * mean_w(x)

    def total() -> float:
        return math.fsum((b - a) * mean_w(a) for a, b in zip(pts[:-1], pts[1:]))

    best = total()
    for _ in range(max_sweeps):
        before = best
        for i in range(1, k):
            lo, hi = pts[i - 1], pts[i + 1]
            span = hi - lo
            cand = golden_section(lambda x: local_work(i, x), lo + 1e-9 * span,
                                  hi - 1e-9 * span)
            old = pts[i]
            if local_work(i, cand) < local_work(i, old):
                pts[i] = cand
                trial = total()
                if trial <= best:
                    best = trial
                else:
                    pts[i] = old
        if before - best <= rel_tol * max(abs(before), 1e-300):
            break
    return ProtocolSchedule(tuple(pts))
