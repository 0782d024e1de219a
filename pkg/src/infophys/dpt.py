"""Data-processing gap on finite joint laws p(x, u, v)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError

MASS_TOL = 1e-12
MARKOV_TOL = 1e-12


def _plogp_sum(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-np.dot(p, np.log(p)))


@dataclass(frozen=True, eq=False)
class JointTriple:
    """Joint pmf indexed as ``pmf[x, u, v]``."""

    pmf: np.ndarray

    def __post_init__(self):
        p = np.array(self.pmf, dtype=float)
        if p.ndim != 3 or 0 in p.shape:
            raise DomainError("joint pmf must be a nonempty 3-d table")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise DomainError("joint pmf entries must be finite and nonnegative")
        if abs(p.sum() - 1.0) > MASS_TOL:
            raise DomainError(f"joint pmf has total mass {p.sum()!r}")
        p.setflags(write=False)
        object.__setattr__(self, "pmf", p)

    @property
    def shape(self):
        return self.pmf.shape

    def entropy(self, *axes: str) -> float:
        """Joint entropy of the named coordinates, e.g. ``entropy("x", "v")``."""
        keep = {"x": 0, "u": 1, "v": 2}
        drop = tuple(i for n, i in keep.items() if n not in axes)
        return _plogp_sum(self.pmf.sum(axis=drop).ravel())

    def conditional_entropy(self, target: str, *given: str) -> float:
        return self.entropy(target, *given) - (self.entropy(*given) if given else 0.0)

    def mutual_information(self, a: str, b: str) -> float:
        return self.entropy(a) + self.entropy(b) - self.entropy(a, b)


def _stochastic(table, name: str) -> np.ndarray:
    t = np.asarray(table, dtype=float)
    if t.ndim != 2:
        raise DomainError(f"{name} must be a 2-d table")
    if np.any(t < 0):
        raise DomainError(f"{name} has negative entries")
    bad = np.abs(t.sum(axis=1) - 1.0) > MASS_TOL
    if np.any(bad):
        raise DomainError(f"{name} row(s) {np.flatnonzero(bad).tolist()} not normalized")
    return t


def make_markov(pv, puv, pxu) -> JointTriple:
    """Chain ``V -> U -> X``: ``p(x,u,v) = p(v) p(u|v) p(x|u)``.

    ``puv[v, u] = p(u|v)`` and ``pxu[u, x] = p(x|u)``.  ``pv`` may be a
    :class:`~infophys.ensemble.DiscreteDistribution` or a probability vector.
    """
    pv = np.asarray(getattr(pv, "probs", pv), dtype=float).reshape(-1)
    if np.any(pv < 0) or abs(pv.sum() - 1.0) > MASS_TOL:
        raise DomainError("p(v) must be a normalized probability vector")
    puv = _stochastic(puv, "p(u|v)")
    pxu = _stochastic(pxu, "p(x|u)")
    if puv.shape[0] != pv.size or pxu.shape[0] != puv.shape[1]:
        raise DomainError(
            f"shape mismatch: p(v){pv.shape}, p(u|v){puv.shape}, p(x|u){pxu.shape}")
    joint = np.einsum("v,vu,ux->xuv", pv, puv, pxu)
    return JointTriple(joint)


@dataclass(frozen=True)
class DptReport:
    i_xu: float
    i_xv: float
    gap: float
    h_x_given_u: float
    h_x_given_v: float
    expected_divergence: float
    markov_defect: float
    max_row_defect: float

    @property
    def is_markov(self) -> bool:
        return self.markov_defect < MARKOV_TOL


def _expected_conditional_divergence(pmf: np.ndarray) -> tuple[float, float]:
    """``E_{U,V} D(P(.|U,V) || P(.|V))`` and the worst row-normalization defect."""
    p_uv = pmf.sum(axis=0)
    p_xv = pmf.sum(axis=1)
    p_v = p_xv.sum(axis=0)
    total = 0.0
    worst = 0.0
    nx, nu, nv = pmf.shape
    for u in range(nu):
        for v in range(nv):
            w = p_uv[u, v]
            if w <= 0:
                continue
            post = pmf[:, u, v] / w
            ref = p_xv[:, v] / p_v[v]
            worst = max(worst, abs(post.sum() - 1.0), abs(ref.sum() - 1.0))
            m = post > 0
            if np.any(ref[m] == 0):
                return math.inf, worst
            total += float(w) * float(np.dot(post[m], np.log(post[m] / ref[m])))
    return total, worst


def dpt_report(j: JointTriple) -> DptReport:
    """Mutual-information gap ``I(X;U) - I(X;V)`` and its divergence form.

    With ``E0(x) = -ln P(x|u,v)``, ``E1(x) = -ln P(x|v)`` and beta = 1 both
    partition functions are 1, so the average work of the switch is pure
    dissipation; ``max_row_defect`` records how far each conditional row is
    from summing to one.  ``markov_defect`` is ``I(X;V|U)``.
    """
    h_x = j.entropy("x")
    h_xu = j.conditional_entropy("x", "u")
    h_xv = j.conditional_entropy("x", "v")
    h_xuv = j.conditional_entropy("x", "u", "v")
    defect = max(0.0, h_xu - h_xuv)
    ediv, row = _expected_conditional_divergence(j.pmf)
    i_xu = h_x - h_xu
    i_xv = h_x - h_xv
    return DptReport(i_xu, i_xv, i_xu - i_xv, h_xu, h_xv, ediv, defect, row)


class ConditioningReport(NamedTuple):
    h_x_given_v: float
    h_x_given_uv: float


def conditioning_reduces_entropy(j: JointTriple) -> ConditioningReport:
    return ConditioningReport(j.conditional_entropy("x", "v"),
                              j.conditional_entropy("x", "u", "v"))


def fano_bound(n: int, rate_R: float, capacity_C: float) -> float:
    """Block-error lower bound ``max(0, 1 - 1/n - C/R)`` (rates in nats/use)."""
    if int(n) != n or n < 1:
        raise DomainError("block length must be a positive integer")
    if not rate_R > 0:
        raise DomainError("rate must be positive")
    if capacity_C < 0:
        raise DomainError("capacity must be nonnegative")
    return max(0.0, 1.0 - 1.0 / n - capacity_C / rate_R)
