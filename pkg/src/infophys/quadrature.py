"""Deterministic adaptive Simpson quadrature."""
from __future__ import annotations

import math
from typing import Callable

from .errors import QuadratureError

DEFAULT_TOL = 1e-10
MAX_DEPTH = 60


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = DEFAULT_TOL, max_depth: int = MAX_DEPTH) -> float:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Intervals are bisected until the two-panel Simpson estimate agrees with
    the one-panel estimate to ``15 * tol_local`` (local tolerance halves at
    each level); the Richardson correction is added to every accepted panel.
    Raises :class:`QuadratureError` if an interval needs more than
    ``max_depth`` bisections or the integrand is not finite.
    """
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, tol, max_depth)
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    pieces: list[float] = []
    # explicit stack keeps evaluation order (and so the float sum) fixed
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, est, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        fl, fr = f(0.5 * (lo + mid)), f(0.5 * (mid + hi))
        left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi)
        delta = left + right - est
        if not math.isfinite(delta):
            raise QuadratureError("non-finite integrand value",
                                  interval=(lo, hi), depth=depth, estimate=est)
        if abs(delta) <= 15.0 * eps or hi - lo <= 4 * math.ulp(mid):
            pieces.append(left + right + delta / 15.0)
            continue
        if depth + 1 >= max_depth:
            raise QuadratureError(
                f"no convergence on [{lo!r}, {hi!r}] after {depth + 1} bisections "
                f"(|delta| = {abs(delta):.3e}, local tol = {eps:.3e})",
                interval=(lo, hi), depth=depth + 1, estimate=left + right)
        stack.append((mid, hi, fmid, fr, fhi, right, 0.5 * eps, depth + 1))
        stack.append((lo, mid, flo, fl, fmid, left, 0.5 * eps, depth + 1))
    return math.fsum(pieces)
