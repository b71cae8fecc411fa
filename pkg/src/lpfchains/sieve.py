"""Segmented sieve of Eratosthenes: prime tables, exact prime counting, and a
streaming largest-prime-factor tabulation whose working memory stays at
O(segment + pi(sqrt(n))) no matter how large n gets.

Supported domain is n <= 10^9; all integer arithmetic is exact (Python ints,
int64 segment buffers with values far below 2^63).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import IO, Iterator

import numpy as np

from .errors import OutOfRangeError, ResourceBudgetError

DEFAULT_SEGMENT_SIZE = 1 << 18  # entries per window; comfortably L2-resident

MEMORY_BUDGET_ENV = "LPFCHAINS_MAX_MEMORY"
DEFAULT_MEMORY_BUDGET = 2 << 30  # bytes

# Below this window size the per-segment numpy overhead dominates, so a
# scalar trial-division path is used instead.
_SCALAR_WINDOW_CUTOFF = 1024


def memory_budget() -> int:
    """Allocation budget in bytes, from LPFCHAINS_MAX_MEMORY when set."""
    raw = os.environ.get(MEMORY_BUDGET_ENV)
    if raw is None:
        return DEFAULT_MEMORY_BUDGET
    return int(raw)


def _check_budget(nbytes: int, what: str) -> None:
    budget = memory_budget()
    if nbytes > budget:
        raise ResourceBudgetError(
            f"{what} needs about {nbytes} bytes, over the "
            f"{MEMORY_BUDGET_ENV} budget of {budget}"
        )


def _pi_upper_estimate(x: int) -> int:
    # pi(x) < 1.26 x / ln x for x > 16; constant padded for safety.
    if x < 17:
        return 8
    return int(1.3 * x / math.log(x)) + 8


def _simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an ascending int64 array (flat sieve)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def iter_prime_segments(
    limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> Iterator[np.ndarray]:
    """Yield ascending int64 arrays of primes that together cover [2, limit].

    The base chunk (primes <= sqrt(limit)) comes first; the rest is sieved
    window by window, so peak extra memory is O(segment_size + pi(sqrt(limit))).
    """
    if segment_size < 1:
        raise ValueError("segment_size must be >= 1")
    if limit < 2:
        return
    root = math.isqrt(limit)
    base = _simple_sieve(root)
    if base.size:
        yield base
    base_list = base.tolist()
    lo = root + 1
    while lo <= limit:
        hi = min(lo + segment_size - 1, limit)
        flags = np.ones(hi - lo + 1, dtype=bool)
        for p in base_list:
            start = max(p * p, -(-lo // p) * p)
            if start <= hi:
                flags[start - lo :: p] = False
        hits = np.flatnonzero(flags)
        if hits.size:
            yield (hits + lo).astype(np.int64)
        lo = hi + 1


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``, ascending, with exact counting queries.

    Immutable after construction; safe to share across threads.
    """

    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)

    def prime_count(self, x: int) -> int:
        """pi(x), the number of primes <= x.  Requires x <= limit."""
        if x > self.limit:
            raise OutOfRangeError(
                f"prime_count({x}) is beyond the table limit {self.limit}"
            )
        if x < 2:
            return 0
        return int(np.searchsorted(self.primes, x, side="right"))

    def primes_in_interval(self, lo: float, hi: float) -> list[int]:
        """Primes p with lo < p < hi (both endpoints excluded), descending."""
        if hi > self.limit:
            raise OutOfRangeError(
                f"primes_in_interval upper endpoint {hi} is beyond the "
                f"table limit {self.limit}"
            )
        i = int(np.searchsorted(self.primes, lo, side="right"))
        j = int(np.searchsorted(self.primes, hi, side="left"))
        if j <= i:
            return []
        return self.primes[i:j][::-1].tolist()


def primes_up_to(limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> PrimeTable:
    """Build the table of every prime <= limit."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    _check_budget(
        16 * _pi_upper_estimate(limit) + min(segment_size, limit + 1), "prime table"
    )
    chunks = list(iter_prime_segments(limit, segment_size))
    if chunks:
        primes = chunks[0] if len(chunks) == 1 else np.concatenate(chunks)
    else:
        primes = np.empty(0, dtype=np.int64)
    return PrimeTable(limit=limit, primes=primes)


def _lpf_scalar(m: int, base_primes: list[int]) -> int:
    """Largest prime factor of m by dividing out base primes (<= sqrt(m))."""
    r = m
    best = 0
    for p in base_primes:
        if p * p > r:
            break
        if r % p == 0:
            best = p
            while r % p == 0:
                r //= p
    return r if r > 1 else best


def _lpf_window(lo: int, hi: int, base_primes: list[int]) -> np.ndarray:
    """lpf values for the window [lo, hi] via overwrite sieving.

    Base primes are applied in ascending order, so the last overwrite leaves
    the largest base-prime divisor; prime powers are divided out of a residual
    cofactor, and any residual > 1 is the (unique) prime factor above
    sqrt(n), which then wins.
    """
    lpf = np.zeros(hi - lo + 1, dtype=np.int64)
    residual = np.arange(lo, hi + 1, dtype=np.int64)
    for p in base_primes:
        if p > hi:
            break
        start = -(-lo // p) * p
        if start > hi:
            continue
        lpf[start - lo :: p] = p
        pk = p
        while pk <= hi:
            s = -(-lo // pk) * pk
            if s <= hi:
                residual[s - lo :: pk] //= p
            pk *= p
    above = residual > 1
    lpf[above] = residual[above]
    return lpf


def lpf_segments(
    n: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (start, values) windows covering m = 2..n in ascending order.

    values[i] is the largest prime factor of start + i.  The full range is
    never materialised: working state is the current window plus the primes
    up to sqrt(n).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if segment_size < 1:
        raise ValueError("segment_size must be >= 1")
    _check_budget(
        16 * min(segment_size, n) + 8 * _pi_upper_estimate(math.isqrt(n)),
        "lpf segments",
    )
    base = _simple_sieve(math.isqrt(n)).tolist()
    scalar = segment_size < _SCALAR_WINDOW_CUTOFF
    lo = 2
    while lo <= n:
        hi = min(lo + segment_size - 1, n)
        if scalar:
            vals = np.array(
                [_lpf_scalar(m, base) for m in range(lo, hi + 1)], dtype=np.int64
            )
        else:
            vals = _lpf_window(lo, hi, base)
        yield lo, vals
        lo = hi + 1


def lpf_stream(
    n: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> Iterator[tuple[int, int]]:
    """Yield (m, P(m)) for m = 2..n in ascending order, each m exactly once.

    P(m) is the largest prime factor of m; it is prime, divides m, and no
    larger prime does.  m = 1 is excluded: P(1) is undefined and 1 can never
    start a chain anyway.
    """
    for lo, vals in lpf_segments(n, segment_size):
        yield from zip(range(lo, lo + vals.size), vals.tolist())


def dump_lpf_csv(n: int, out: IO[str], segment_size: int = DEFAULT_SEGMENT_SIZE) -> None:
    """Debug dump of the stream as CSV with header ``m,lpf``."""
    out.write("m,lpf\n")
    for lo, vals in lpf_segments(n, segment_size):
        out.write(
            "".join(f"{m},{v}\n" for m, v in zip(range(lo, lo + vals.size), vals.tolist()))
        )
