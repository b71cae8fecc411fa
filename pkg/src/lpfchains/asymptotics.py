"""Finite-n bound formulas and the numeric checks behind them: the counting
upper bound, exact prime sums against their two-term expansion, the two-term
prime-counting estimate, and the scan that brackets g(n) per n.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .chains import exact_g_many
from .construct import DEFAULT_BOUNDS_SWEEP, best_construction
from .errors import LpfchainsError
from .floors import floor_sqrt_2n_over_logn, floor_sqrt_half_nlogn, floor_sqrt_nlogn
from .sieve import DEFAULT_SEGMENT_SIZE, PrimeTable, iter_prime_segments, primes_up_to

# The asymptotic window for g(n)/sqrt(n/ln n): reported per row, never
# asserted at finite n.
RATIO_WINDOW = (2.0, 2.0 * math.sqrt(2.0))


def upper_bound(n: int, table: PrimeTable | None = None) -> int:
    """floor(sqrt(2n/ln n)) + pi(floor(sqrt(n ln n / 2))), a rigorous bound.

    Every chain element a = q * P(a) has distinct q and distinct prime P(a);
    q > sqrt(2n/ln n) and P(a) > sqrt(n ln n / 2) together would force
    q * P(a) > n, so each element lands in one of the two counted classes.
    Uses exact pi from the sieve and integer-exact floors.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    k_q = floor_sqrt_2n_over_logn(n)
    k_p = floor_sqrt_half_nlogn(n)
    if table is None:
        table = primes_up_to(max(k_p, 2))
    return k_q + table.prime_count(k_p)


def prime_sum(x: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> int:
    """Exact sum of all primes <= x.

    Windows are reduced in int64 chunks sized so a chunk sum can never reach
    2^63, then accumulated into an arbitrary-precision Python int, so the
    total cannot wrap for any supported x.
    """
    if x < 0:
        raise ValueError("x must be >= 0")
    total = 0
    chunk = max(1, (1 << 62) // max(x, 1))
    for seg in iter_prime_segments(x, segment_size):
        for k in range(0, seg.size, chunk):
            total += int(seg[k : k + chunk].sum(dtype=np.int64))
    return total


@dataclass
class ExpansionReport:
    """Exact prime sum against x^2/(2 ln x) + x^2/(4 ln^2 x).

    err_over_x2_log3 rescales the remainder by ln^3(x)/x^2; it should sit in
    a bounded band if the remainder really is O(x^2 / ln^3 x).
    """

    x: int
    exact_sum: int
    term1: float
    term2: float
    abs_err: float
    rel_err: float
    err_over_x2_log3: float


def prime_sum_expansion(x: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> ExpansionReport:
    """Compare the exact prime sum below x with its two-term expansion."""
    if x < 3:
        raise ValueError("x must be >= 3")
    exact = prime_sum(x, segment_size)
    lx = math.log(x)
    term1 = x * x / (2 * lx)
    term2 = x * x / (4 * lx * lx)
    abs_err = abs(exact - term1 - term2)
    return ExpansionReport(
        x=x,
        exact_sum=exact,
        term1=term1,
        term2=term2,
        abs_err=abs_err,
        rel_err=abs_err / exact,
        err_over_x2_log3=abs_err * lx**3 / (x * x),
    )


def pi_estimate(x: float) -> float:
    """Two-term prime-counting estimate (x/ln x)(1 + 1/ln x).

    The next-order term is O(1)/ln^2 x with an unspecified constant, so it is
    deliberately excluded; pi_report surfaces its empirical size instead.
    """
    if x < 3:
        raise ValueError("x must be >= 3")
    lx = math.log(x)
    return x / lx * (1 + 1 / lx)


@dataclass
class PiReport:
    x: float
    pi_exact: int
    estimate: float
    residual_constant: float  # (pi(x) - estimate) * ln^3(x) / x


def pi_report(x: float, table: PrimeTable | None = None) -> PiReport:
    """pi_estimate next to exact pi(x), with the implied constant of the
    excluded second-order term."""
    est = pi_estimate(x)
    xi = int(x)
    if table is None:
        table = primes_up_to(max(xi, 2))
    exact = table.prime_count(xi)
    lx = math.log(x)
    return PiReport(
        x=x, pi_exact=exact, estimate=est, residual_constant=(exact - est) * lx**3 / x
    )


@dataclass
class SumBoundCheck:
    """Is the sum of all primes <= sqrt(n ln n) below n?

    This is the feasibility condition for the interval greedy to place every
    selected prime without overshooting n.
    """

    n: int
    prime_limit: int  # floor(sqrt(n ln n))
    total: int
    holds: bool
    margin: float  # (n - total) / n


def sum_bound_check(n: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> SumBoundCheck:
    if n < 3:
        raise ValueError("n must be >= 3")
    k = floor_sqrt_nlogn(n)
    total = prime_sum(k, segment_size)
    return SumBoundCheck(
        n=n, prime_limit=k, total=total, holds=total < n, margin=(n - total) / n
    )


@dataclass
class BoundsRow:
    """Per-n bracket: construction lower bound, exact g when affordable,
    counting upper bound."""

    n: int
    g_exact: int | None
    lower_len: int
    upper: int
    ratio: float  # (g_exact or lower_len) / sqrt(n / ln n)
    sqrt_n_over_log_n: float
    error: str | None = None

    @property
    def in_asymptotic_window(self) -> bool:
        return RATIO_WINDOW[0] <= self.ratio <= RATIO_WINDOW[1]


def _scan_row(
    n: int,
    g_exact: int | None,
    bounds: Sequence[float],
    table: PrimeTable,
) -> BoundsRow:
    try:
        lower = len(best_construction(n, bounds, table=table))
        upper = upper_bound(n, table=table)
        denom = math.sqrt(n / math.log(n))
        ratio = (g_exact if g_exact is not None else lower) / denom
        return BoundsRow(
            n=n,
            g_exact=g_exact,
            lower_len=lower,
            upper=upper,
            ratio=ratio,
            sqrt_n_over_log_n=denom,
        )
    except (LpfchainsError, ValueError, ArithmeticError) as exc:
        return BoundsRow(
            n=n, g_exact=g_exact, lower_len=0, upper=0, ratio=0.0,
            sqrt_n_over_log_n=0.0, error=str(exc),
        )


def scan(
    ns: Sequence[int],
    exact_cap: int,
    bounds: Sequence[float] = DEFAULT_BOUNDS_SWEEP,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> list[BoundsRow]:
    """One BoundsRow per n, ascending.  g_exact is filled for n <= exact_cap
    (single shared streaming pass); per-row failures are recorded in the row
    and the scan keeps going.  Output is independent of the thread count.
    """
    ns = list(ns)
    if not ns:
        raise ValueError("ns must be nonempty")
    if any(b - a <= 0 for a, b in zip(ns, ns[1:])):
        raise ValueError("ns must be strictly ascending")
    exact_ns = [n for n in ns if n <= exact_cap]
    g_map = exact_g_many(exact_ns, segment_size=segment_size) if exact_ns else {}
    n_big = max(ns[-1], 3)
    table = primes_up_to(max(floor_sqrt_nlogn(n_big), int(max(bounds, default=2)), 2))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda n: _scan_row(n, g_map.get(n), bounds, table), ns))
    else:
        rows = [_scan_row(n, g_map.get(n), bounds, table) for n in ns]
    return rows


def scan_csv(rows: Iterable[BoundsRow]) -> str:
    lines = ["n,g_exact,lower_len,upper,ratio,sqrt_n_over_log_n"]
    for r in rows:
        g = "" if r.g_exact is None else str(r.g_exact)
        lines.append(
            f"{r.n},{g},{r.lower_len},{r.upper},{r.ratio!r},{r.sqrt_n_over_log_n!r}"
        )
    return "\n".join(lines) + "\n"


def scan_json(rows: Iterable[BoundsRow]) -> str:
    objs = []
    for r in rows:
        obj = {
            "n": r.n,
            "g_exact": r.g_exact,
            "lower_len": r.lower_len,
            "upper": r.upper,
            "ratio": r.ratio,
            "sqrt_n_over_log_n": r.sqrt_n_over_log_n,
        }
        if r.error is not None:
            obj["error"] = r.error
        objs.append(obj)
    return json.dumps(objs, indent=2) + "\n"


def expansion_csv(reports: Iterable[ExpansionReport]) -> str:
    lines = ["x,exact_sum,term1,term2,abs_err,rel_err,err_norm"]
    for r in reports:
        lines.append(
            f"{r.x},{r.exact_sum},{r.term1!r},{r.term2!r},"
            f"{r.abs_err!r},{r.rel_err!r},{r.err_over_x2_log3!r}"
        )
    return "\n".join(lines) + "\n"


def expansion_json(reports: Iterable[ExpansionReport]) -> str:
    objs = [
        {
            "x": r.x,
            "exact_sum": r.exact_sum,
            "term1": r.term1,
            "term2": r.term2,
            "abs_err": r.abs_err,
            "rel_err": r.rel_err,
            "err_norm": r.err_over_x2_log3,
        }
        for r in reports
    ]
    return json.dumps(objs, indent=2) + "\n"
