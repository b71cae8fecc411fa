"""Exact integer floors of the real-valued square-root thresholds used by the
bound formulas.

Every floor is decided by comparing k*k against the threshold, never by
flooring a floating square root.  When k*k lands inside a small guard band
around the double-precision threshold, the comparison is settled in high
precision, so an off-by-one can never leak into a bound.
"""

from __future__ import annotations

import math
from typing import Callable

import mpmath

# Relative half-width of the ambiguity band around the double value.
# Doubles carry ~1e-16 relative error; 1e-12 is a generous safety margin.
_GUARD = 1e-12

_HP_DPS = 50


def _sq_le(k: int, approx: float, refine: Callable[[], mpmath.mpf] | None) -> bool:
    """Is k*k <= t, where approx is t in double precision?"""
    t = k * k
    if refine is not None and abs(t - approx) <= _GUARD * max(1.0, abs(approx)):
        with mpmath.workdps(_HP_DPS):
            return mpmath.mpf(t) <= refine()
    return t <= approx


def floor_sqrt_of(approx: float, refine: Callable[[], mpmath.mpf] | None = None) -> int:
    """Largest integer k with k*k <= t, for a positive real t.

    ``approx`` is t evaluated in double precision; ``refine`` (optional)
    re-evaluates t to 50 significant digits and is only consulted for
    comparisons inside the guard band.
    """
    if approx < 0:
        raise ValueError("threshold must be nonnegative")
    k = math.isqrt(int(approx))
    while _sq_le(k + 1, approx, refine):
        k += 1
    while k > 0 and not _sq_le(k, approx, refine):
        k -= 1
    return k


def floor_sqrt_nlogn(n: int) -> int:
    """floor(sqrt(n * ln n)) for integer n >= 2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return floor_sqrt_of(n * math.log(n), lambda: mpmath.mpf(n) * mpmath.log(n))


def floor_sqrt_2n_over_logn(n: int) -> int:
    """floor(sqrt(2n / ln n)) for integer n >= 2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return floor_sqrt_of(2 * n / math.log(n), lambda: 2 * mpmath.mpf(n) / mpmath.log(n))


def floor_sqrt_half_nlogn(n: int) -> int:
    """floor(sqrt(n * ln n / 2)) for integer n >= 2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return floor_sqrt_of(n * math.log(n) / 2, lambda: mpmath.mpf(n) * mpmath.log(n) / 2)
