"""Chains of integers with strictly decreasing largest prime factor.

g(n) is the length of the longest sequence 0 < a_1 < ... < a_t <= n with
P(a_1) > P(a_2) > ... > P(a_t), where P is the largest prime factor.  This
package computes g(n) exactly at desk scale, builds explicit lower-bound
chains, evaluates a rigorous counting upper bound, and numerically checks the
prime-sum and prime-counting estimates those bounds rest on.
"""

from .asymptotics import (
    BoundsRow,
    ExpansionReport,
    PiReport,
    RATIO_WINDOW,
    SumBoundCheck,
    expansion_csv,
    expansion_json,
    pi_estimate,
    pi_report,
    prime_sum,
    prime_sum_expansion,
    scan,
    scan_csv,
    scan_json,
    sum_bound_check,
    upper_bound,
)
from .chains import (
    Chain,
    ChainVerdict,
    DEFAULT_ORACLE_CAP,
    DEFAULT_WITNESS_CAP,
    GResult,
    exact_g,
    exact_g_many,
    exact_g_oracle,
    g_prefix,
    largest_prime_factor,
    oracle_g_prefix,
    strict_lds_length,
    validate_chain,
)
from .construct import (
    DEFAULT_BOUNDS_SWEEP,
    GreedyTrace,
    adaptive_greedy,
    best_construction,
    interval_greedy,
)
from .errors import (
    CapExceededError,
    EmptyIntervalError,
    LpfchainsError,
    OutOfRangeError,
    ResourceBudgetError,
)
from .floors import floor_sqrt_2n_over_logn, floor_sqrt_half_nlogn, floor_sqrt_nlogn
from .sieve import (
    DEFAULT_SEGMENT_SIZE,
    PrimeTable,
    dump_lpf_csv,
    iter_prime_segments,
    lpf_segments,
    lpf_stream,
    memory_budget,
    primes_up_to,
)

__version__ = "0.1.0"
