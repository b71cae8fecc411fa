"""Shared fixtures and independent reference implementations.

The reference functions here are deliberately naive (flat bytearray sieve,
plain trial division, quadratic DP) so they share nothing with the package's
segmented / patience code paths.
"""

import pytest

from lpfchains import primes_up_to


def ref_sieve(limit: int) -> list[int]:
    """Flat bytearray sieve, independent of the segmented implementation."""
    if limit < 2:
        return []
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    p = 2
    while p * p <= limit:
        if flags[p]:
            start = p * p
            flags[start :: p] = b"\x00" * len(range(start, limit + 1, p))
        p += 1
    return [i for i, f in enumerate(flags) if f]


def ref_lpf(m: int) -> int:
    """Largest prime factor by plain ascending trial division."""
    assert m >= 2
    r = m
    best = 0
    d = 2
    while d * d <= r:
        if r % d == 0:
            best = d
            while r % d == 0:
                r //= d
        d += 1
    return r if r > 1 else best


def ref_strict_lds(values) -> int:
    """Quadratic DP for the longest strictly decreasing subsequence."""
    best = 0
    dp = []
    for i, v in enumerate(values):
        here = 1
        for j in range(i):
            if values[j] > v and dp[j] + 1 > here:
                here = dp[j] + 1
        dp.append(here)
        best = max(best, here)
    return best


@pytest.fixture(scope="session")
def table_1000():
    return primes_up_to(1000)


@pytest.fixture(scope="session")
def table_100k():
    return primes_up_to(10**5)
