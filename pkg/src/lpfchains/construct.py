"""Lower-bound chain constructors.

The interval greedy walks the primes in (sqrt(n), sqrt(n ln n)) downward,
always taking the smallest multiple that beats the previous element; the
adaptive variant starts from an arbitrary bound and keeps descending through
all smaller primes, skipping any prime it cannot use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .chains import Chain, largest_prime_factor
from .errors import EmptyIntervalError, OutOfRangeError
from .floors import floor_sqrt_nlogn
from .sieve import PrimeTable, primes_up_to

DEFAULT_BOUNDS_SWEEP: tuple[float, ...] = (2.0,)


@dataclass
class GreedyTrace:
    """Full record of one interval-greedy run.

    ``elements`` keeps every constructed (a, p), including any that overshoot
    n; ``chain`` is the maximal valid prefix (all a <= n).  partial_sums[i] is
    the sum of the first i+1 selected primes and bounds elements[i] from above.
    """

    n: int
    primes_used: list[int]
    qs: list[int]
    elements: list[tuple[int, int]]
    partial_sums: list[int]
    overshoot_index: int | None
    chain: Chain

    def to_csv(self) -> str:
        lines = ["i,a,p,q,partial_sum,overshoot_flag"]
        for i, (a, p) in enumerate(self.elements):
            flag = int(self.overshoot_index is not None and i >= self.overshoot_index)
            lines.append(f"{i + 1},{a},{p},{self.qs[i]},{self.partial_sums[i]},{flag}")
        return "\n".join(lines) + "\n"


def _greedy_walk(primes_desc: Sequence[int], n: int):
    """Run the minimal-multiple recurrence over the given descending primes.

    Returns (qs, elements, partial_sums, overshoot_index); elements are all
    constructed pairs, overshoot_index the first position with a > n.
    """
    qs: list[int] = []
    elements: list[tuple[int, int]] = []
    partial_sums: list[int] = []
    a_prev = 0
    running = 0
    overshoot = None
    for idx, p in enumerate(primes_desc):
        q = a_prev // p + 1
        a = q * p
        qs.append(q)
        elements.append((a, p))
        running += p
        partial_sums.append(running)
        if overshoot is None and a > n:
            overshoot = idx
        a_prev = a
    return qs, elements, partial_sums, overshoot


def interval_greedy(n: int, table: PrimeTable | None = None) -> GreedyTrace:
    """Greedy chain on the primes in (sqrt(n), sqrt(n ln n)), descending.

    a_1 = p_1 and, for i >= 2, a_i = q_i p_i with q_i the smallest integer
    beating a_{i-1}.  Each valid element has P(a_i) = p_i automatically:
    p_i > sqrt(n) >= sqrt(a_i), so p_i is the unique prime factor above
    sqrt(a_i).  Natural logarithm throughout; both interval endpoints are
    excluded, decided by integer-exact comparisons of p^2 against n and
    n ln n.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    hi = floor_sqrt_nlogn(n)
    if table is None:
        table = primes_up_to(max(hi, 2))
    elif table.limit < hi:
        raise OutOfRangeError(f"table limit {table.limit} below sqrt(n ln n) ~ {hi}")
    lo_min = math.isqrt(n) + 1  # p > sqrt(n)  <=>  p^2 > n  <=>  p >= isqrt(n)+1
    i = int(np.searchsorted(table.primes, lo_min, side="left"))
    j = int(np.searchsorted(table.primes, hi, side="right"))
    primes_desc = table.primes[i:j][::-1].tolist()
    if not primes_desc:
        raise EmptyIntervalError(
            f"no primes in (sqrt({n}), sqrt({n} ln {n})) ~ ({math.sqrt(n):.3f}, "
            f"{math.sqrt(n * math.log(n)):.3f})"
        )
    qs, elements, partial_sums, overshoot = _greedy_walk(primes_desc, n)
    valid = elements if overshoot is None else elements[:overshoot]
    return GreedyTrace(
        n=n,
        primes_used=primes_desc,
        qs=qs,
        elements=elements,
        partial_sums=partial_sums,
        overshoot_index=overshoot,
        chain=Chain(n=n, elements=list(valid)),
    )


def adaptive_greedy(n: int, start_bound: float, table: PrimeTable | None = None) -> Chain:
    """Greedy chain over all primes <= start_bound, descending.

    For each prime p the candidate is the smallest multiple q*p beating the
    last accepted value; p is skipped when that multiple exceeds n.  Once
    q >= p the candidate's largest prime factor can differ from p (e.g.
    51 = 3*17), which would break the chain invariant, so such candidates are
    skipped too; for q < p acceptance is always safe.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 2 <= start_bound <= n:
        raise ValueError(f"start_bound must be in [2, n], got {start_bound}")
    if table is None:
        table = primes_up_to(max(int(start_bound), 2))
    elif table.limit < int(start_bound):
        raise OutOfRangeError(
            f"table limit {table.limit} below start_bound {start_bound}"
        )
    j = int(np.searchsorted(table.primes, start_bound, side="right"))
    v = 0
    elements: list[tuple[int, int]] = []
    for p in table.primes[:j][::-1].tolist():
        q = v // p + 1
        c = q * p
        if c > n:
            continue
        if q >= p and largest_prime_factor(c) != p:
            continue
        elements.append((c, p))
        v = c
    return Chain(n=n, elements=elements)


def best_construction(
    n: int, bounds: Iterable[float], table: PrimeTable | None = None
) -> Chain:
    """Longest chain among adaptive runs over ``bounds`` plus the interval
    greedy; ties go to the smaller start bound."""
    bounds = sorted(bounds)
    if not bounds:
        raise ValueError("bounds must be nonempty")
    if n < 2:
        raise ValueError("n must be >= 2")
    if table is None:
        table = primes_up_to(max(floor_sqrt_nlogn(n), int(bounds[-1]), 2))
    best: Chain | None = None
    for b in bounds:
        chain = adaptive_greedy(n, b, table=table)
        if best is None or len(chain) > len(best):
            best = chain
    try:
        interval_chain = interval_greedy(n, table=table).chain
        if len(interval_chain) > len(best):
            best = interval_chain
    except EmptyIntervalError:
        pass
    return best
