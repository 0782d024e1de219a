"""Tilted family between two hypotheses and the Neyman-Pearson error exponents."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln, logsumexp

from .ensemble import DiscreteDistribution
from .errors import DomainError, UnsupportedSizeError
from .quadrature import DEFAULT_TOL, adaptive_simpson

BISECTION_TOL = 1e-12
BINARY_MAX_N = 100_000


@dataclass(frozen=True, eq=False)
class TiltedFamily:
    """Pair ``(P0, P1)`` on a shared alphabet, both strictly positive everywhere."""

    p0: DiscreteDistribution
    p1: DiscreteDistribution

    def __post_init__(self):
        if self.p0.size != self.p1.size:
            raise DomainError("hypotheses live on different alphabets")
        if np.any(np.isinf(self.p0.log_probs)) or np.any(np.isinf(self.p1.log_probs)):
            raise DomainError("tilted family needs mutually absolutely continuous laws")

    @classmethod
    def bernoulli(cls, q0: float, q1: float) -> "TiltedFamily":
        """``P_i = (1 - q_i, q_i)``, i.e. ``q_i`` is the probability of symbol 1."""
        return cls(DiscreteDistribution.from_probs([1 - q0, q0]),
                   DiscreteDistribution.from_probs([1 - q1, q1]))

    @property
    def log_ratio(self) -> np.ndarray:
        """``ln(P1/P0)`` per symbol; its tilted mean is ``d lnZ / d lambda``."""
        return self.p1.log_probs - self.p0.log_probs

    @property
    def degenerate(self) -> bool:
        return bool(np.all(self.log_ratio == 0))


def _check_lambda(lam: float, extrapolate: bool) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or (not extrapolate and not 0.0 <= lam <= 1.0):
        raise DomainError(f"lambda outside [0, 1]: {lam!r}")
    return lam


class Tilted(NamedTuple):
    p_lambda: DiscreteDistribution
    log_z: float


def _tilt(f: TiltedFamily, lam: float) -> tuple[np.ndarray, float, float]:
    """Tilted probabilities, ``lnZ`` and ``d lnZ / d lambda`` (hot path, no validation)."""
    lw = (1.0 - lam) * f.p0.log_probs + lam * f.p1.log_probs
    top = lw.max()
    w = np.exp(lw - top)
    total = w.sum()
    probs = w / total
    return probs, float(top + math.log(total)), float(probs @ f.log_ratio)


def tilted(f: TiltedFamily, lam: float, extrapolate: bool = False) -> Tilted:
    """Geometric mixture ``P0^(1-lam) P1^lam / Z(lam)``."""
    lam = _check_lambda(lam, extrapolate)
    lw = (1.0 - lam) * f.p0.log_probs + lam * f.p1.log_probs
    lz = float(logsumexp(lw))
    return Tilted(DiscreteDistribution(lw - lz), lz)


def log_z(f: TiltedFamily, lam: float, extrapolate: bool = False) -> float:
    return _tilt(f, _check_lambda(lam, extrapolate))[1]


def log_z_grid(f: TiltedFamily, lams, extrapolate: bool = False) -> np.ndarray:
    """``lnZ`` on a grid of ``lambda`` values in one vectorized pass."""
    lams = np.asarray(lams, dtype=float).reshape(-1)
    for lam in (lams.min(), lams.max()) if lams.size else ():
        _check_lambda(lam, extrapolate)
    lw = np.outer(1.0 - lams, f.p0.log_probs) + np.outer(lams, f.p1.log_probs)
    return logsumexp(lw, axis=1)


def dlogz(f: TiltedFamily, lam: float) -> float:
    """``d lnZ / d lambda = E_lambda[ln(P1/P0)]``."""
    return _tilt(f, _check_lambda(lam, False))[2]


@dataclass(frozen=True)
class ExponentPair:
    e0: float
    e1: float
    lam: float


def exponent_pair(f: TiltedFamily, lam: float) -> ExponentPair:
    """``e_i(lam) = D(P_lam || P_i)``.

    Uses ``e0 = lam m - lnZ`` and ``e1 = -(1 - lam) m - lnZ`` with
    ``m = d lnZ / d lambda``, which keeps the endpoint values exact.
    """
    lam = _check_lambda(lam, False)
    _, lz, m = _tilt(f, lam)
    e0 = lam * m - lz
    e1 = -(1.0 - lam) * m - lz
    return ExponentPair(max(e0, 0.0), max(e1, 0.0), lam)


class ChernoffPoint(NamedTuple):
    lambda_star: float
    exponent: float
    degenerate: bool


def chernoff_point(f: TiltedFamily, tol: float = BISECTION_TOL) -> ChernoffPoint:
    """Minimizer of ``lnZ`` on [0, 1], found by bisection on its derivative.

    At the minimizer the two exponents coincide and equal ``-lnZ``.  For
    ``P0 == P1`` the minimizer is undefined: ``lambda_star`` is NaN.
    """
    if f.degenerate:
        return ChernoffPoint(math.nan, 0.0, True)
    lo, hi = 0.0, 1.0
    mid = 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        d = dlogz(f, mid)
        if abs(d) < tol or hi - lo <= 2 * math.ulp(mid):
            break
        if d > 0:
            hi = mid
        else:
            lo = mid
    return ChernoffPoint(mid, -log_z(f, mid), False)


class AreaReport(NamedTuple):
    area0: float
    area1: float
    gap: float
    difference_integral: float


def area_equality(f: TiltedFamily, tol: float = DEFAULT_TOL) -> AreaReport:
    """Areas under ``e0`` and ``e1`` on [0, 1] plus ``int (e1 - e0)``, which is ``-[lnZ]_0^1 = 0``."""
    area0 = adaptive_simpson(lambda x: exponent_pair(f, x).e0, 0.0, 1.0, tol)
    area1 = adaptive_simpson(lambda x: exponent_pair(f, x).e1, 0.0, 1.0, tol)
    diff = adaptive_simpson(lambda x: -dlogz(f, x), 0.0, 1.0, tol)
    return AreaReport(area0, area1, abs(area0 - area1), diff)


class ErrorOracle(NamedTuple):
    log_p_err0: float
    log_p_err1: float
    slope0: float
    slope1: float
    e0: float
    e1: float
    c: float
    threshold: float


def _log_multinomial_tail(log_p: np.ndarray, llr: np.ndarray, n: int, threshold: float,
                          accept: bool) -> float:
    """``ln P(sum LLR >= n*thr)`` (accept) or ``ln P(sum LLR < n*thr)`` over type classes."""
    k = log_p.size
    bound = n * threshold
    if k == 2:
        j = np.arange(n + 1)  # count of symbol 1
        logw = (gammaln(n + 1) - gammaln(j + 1) - gammaln(n - j + 1)
                + j * log_p[1] + (n - j) * log_p[0])
        stat = j * llr[1] + (n - j) * llr[0]
        sel = stat >= bound if accept else stat < bound
        return float(logsumexp(logw[sel])) if np.any(sel) else -math.inf
    parts = []
    for a in range(n + 1):
        b = np.arange(n - a + 1)
        c = n - a - b
        logw = (gammaln(n + 1) - gammaln(a + 1) - gammaln(b + 1) - gammaln(c + 1)
                + a * log_p[0] + b * log_p[1] + c * log_p[2])
        stat = a * llr[0] + b * llr[1] + c * llr[2]
        sel = stat >= bound if accept else stat < bound
        if np.any(sel):
            parts.append(float(logsumexp(logw[sel])))
    return float(logsumexp(parts)) if parts else -math.inf


def exact_error_oracle(f: TiltedFamily, n: int, lam: float) -> ErrorOracle:
    """Exact error probabilities of the ``n``-sample likelihood-ratio test.

    H0 is accepted iff the average of ``ln(P0/P1)`` is at least its tilted
    mean ``E_lam[ln(P0/P1)]``.  Probabilities are summed over type classes in
    log space; slopes are ``-(1/n) ln P_err``, and ``c`` is the worst
    ``|slope_i - e_i| * n / ln n``.
    """
    lam = _check_lambda(lam, False)
    if f.p0.size < 2:
        raise DomainError("hypothesis test needs an alphabet of at least two symbols")
    if f.p0.size > 3:
        raise UnsupportedSizeError("type-class enumeration supports alphabets of size <= 3")
    if n < 1 or int(n) != n:
        raise DomainError("n must be a positive integer")
    if f.p0.size == 2 and n > BINARY_MAX_N:
        raise UnsupportedSizeError(f"binary oracle limited to n <= {BINARY_MAX_N}")
    llr = -f.log_ratio
    t = tilted(f, lam)
    thr = float(np.dot(t.p_lambda.probs, llr))
    lp0 = _log_multinomial_tail(f.p0.log_probs, llr, n, thr, accept=False)
    lp1 = _log_multinomial_tail(f.p1.log_probs, llr, n, thr, accept=True)
    ex = exponent_pair(f, lam)
    s0, s1 = -lp0 / n, -lp1 / n
    scale = n / math.log(n) if n > 1 else 1.0
    c = max(abs(s0 - ex.e0), abs(s1 - ex.e1)) * scale
    return ErrorOracle(lp0, lp1, s0, s1, ex.e0, ex.e1, c, thr)
