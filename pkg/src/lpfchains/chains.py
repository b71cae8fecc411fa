"""Exact computation of g(n): the length of the longest run of integers
0 < a_1 < ... < a_t <= n whose largest prime factors strictly decrease.

The main path folds the streamed lpf values through a strict patience/tails
update (O(n log g) time, O(g) state); a quadratic DP over the same values
serves as an independent correctness oracle.
"""

from __future__ import annotations

import csv
import io
import json
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceededError
from .sieve import DEFAULT_SEGMENT_SIZE, _check_budget, lpf_segments

DEFAULT_WITNESS_CAP = 10**7
DEFAULT_ORACLE_CAP = 5 * 10**4


def largest_prime_factor(m: int) -> int:
    """P(m) by trial division (2, 3, then the 6k+-1 wheel).  Requires m >= 2."""
    if m < 2:
        raise ValueError("largest prime factor is undefined for m < 2")
    r = m
    best = 0
    for p in (2, 3):
        if r % p == 0:
            best = p
            while r % p == 0:
                r //= p
    p = 5
    while p * p <= r:
        for q in (p, p + 2):
            if r % q == 0:
                best = q
                while r % q == 0:
                    r //= q
        p += 6
    return r if r > 1 else best


@dataclass
class Chain:
    """A sequence of (a, P(a)) pairs: a strictly increasing and <= n,
    P strictly decreasing."""

    n: int
    elements: list[tuple[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def a_values(self) -> list[int]:
        return [a for a, _ in self.elements]

    @property
    def p_values(self) -> list[int]:
        return [p for _, p in self.elements]

    def to_csv(self) -> str:
        lines = ["i,a,p"]
        lines += [f"{i},{a},{p}" for i, (a, p) in enumerate(self.elements, start=1)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, n: int) -> "Chain":
        try:
            rows = csv.DictReader(io.StringIO(text))
            return cls(n=n, elements=[(int(r["a"]), int(r["p"])) for r in rows])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed chain CSV (wanted columns a,p): {exc}") from exc

    def to_json(self) -> str:
        return json.dumps([{"a": a, "p": p} for a, p in self.elements])

    @classmethod
    def from_json(cls, text: str, n: int) -> "Chain":
        try:
            data = json.loads(text)
            return cls(n=n, elements=[(int(d["a"]), int(d["p"])) for d in data])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed chain JSON (wanted [{{a, p}}, ...]): {exc}") from exc


@dataclass
class GResult:
    """g(n) together with an optional witness chain of that exact length."""

    n: int
    g: int
    witness: Chain | None = None


@dataclass
class ChainVerdict:
    """Outcome of validate_chain: first violated invariant, if any."""

    ok: bool
    code: str | None = None
    index: int | None = None
    message: str = "valid"

    def __bool__(self) -> bool:
        return self.ok


def validate_chain(chain: Chain) -> ChainVerdict:
    """Check every chain invariant, reporting the first violation and where.

    Codes: a_out_of_bounds, a_not_increasing, p_mismatch, p_not_decreasing.
    The recorded p is re-derived by trial division, independently of however
    the chain was produced.
    """
    prev_a = prev_p = None
    for i, (a, p) in enumerate(chain.elements):
        if a < 2 or a > chain.n:
            return ChainVerdict(
                False, "a_out_of_bounds", i, f"element {i}: a={a} outside [2, {chain.n}]"
            )
        if prev_a is not None and a <= prev_a:
            return ChainVerdict(
                False, "a_not_increasing", i, f"element {i}: a={a} <= previous a={prev_a}"
            )
        actual = largest_prime_factor(a)
        if p != actual:
            return ChainVerdict(
                False, "p_mismatch", i, f"element {i}: recorded p={p} but P({a})={actual}"
            )
        if prev_p is not None and p >= prev_p:
            return ChainVerdict(
                False, "p_not_decreasing", i, f"element {i}: p={p} >= previous p={prev_p}"
            )
        prev_a, prev_p = a, p
    return ChainVerdict(True)


def _push_negated(tails: list[int], keys: Iterable[int]) -> int:
    """Strict patience step for already-negated values; returns the new length.

    bisect_left replaces the leftmost tail >= key, so equal values never
    extend a subsequence: the decrease stays strict.
    """
    size = len(tails)
    push = tails.append
    for key in keys:
        i = bisect_left(tails, key)
        if i == size:
            push(key)
            size += 1
        else:
            tails[i] = key
    return size


def strict_lds_length(values: Iterable[int]) -> int:
    """Length of the longest strictly decreasing subsequence of values,
    taken over increasing index order."""
    tails: list[int] = []
    return _push_negated(tails, (-v for v in values))


def exact_g(
    n: int,
    want_witness: bool = False,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> GResult:
    """g(n), streaming the lpf values through the strict patience fold.

    Length-only runs keep O(g) state.  With want_witness, one predecessor
    slot per m is stored (O(n) memory), so n is capped at witness_cap.  The
    witness is the patience reconstruction: one optimum among possibly many,
    with no canonical tie-breaking.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not want_witness:
        tails: list[int] = []
        if n >= 2:
            for _, vals in lpf_segments(n, segment_size):
                _push_negated(tails, (-vals).tolist())
        return GResult(n=n, g=len(tails), witness=None)

    if n > witness_cap:
        raise CapExceededError(
            f"witness reconstruction stores predecessors for every m <= n; "
            f"n={n} is over the cap {witness_cap} (run length-only instead)"
        )
    if n < 2:
        return GResult(n=n, g=0, witness=Chain(n=n, elements=[]))

    _check_budget(4 * (n + 1) + 16 * min(segment_size, n), "witness predecessors")
    prev = np.zeros(n + 1, dtype=np.int32)
    tops: list[int] = []  # m currently ending the best subsequence per length
    tails: list[int] = []
    size = 0
    for lo, vals in lpf_segments(n, segment_size):
        for off, key in enumerate((-vals).tolist()):
            i = bisect_left(tails, key)
            m = lo + off
            if i == size:
                tails.append(key)
                tops.append(m)
                size += 1
            else:
                tails[i] = key
                tops[i] = m
            if i:
                prev[m] = tops[i - 1]
    g = size
    members: list[int] = []
    m = tops[g - 1] if g else 0
    while m:
        members.append(m)
        m = int(prev[m])
    members.reverse()
    witness = Chain(n=n, elements=[(m, largest_prime_factor(m)) for m in members])
    return GResult(n=n, g=g, witness=witness)


def exact_g_many(
    ns: Iterable[int], segment_size: int = DEFAULT_SEGMENT_SIZE
) -> dict[int, int]:
    """g(n) for every n in ns from a single streaming pass (O(g) state)."""
    targets = sorted(set(ns))
    if not targets:
        return {}
    if targets[0] < 1:
        raise ValueError("every n must be >= 1")
    out: dict[int, int] = {}
    pending = iter(targets)
    nxt = next(pending)
    while nxt is not None and nxt < 2:
        out[nxt] = 0
        nxt = next(pending, None)
    if nxt is None:
        return out
    tails: list[int] = []
    size = 0
    for lo, vals in lpf_segments(targets[-1], segment_size):
        keys = (-vals).tolist()
        hi = lo + len(keys) - 1
        if nxt is None or nxt > hi:
            size = _push_negated(tails, keys)
            continue
        for off, key in enumerate(keys):
            i = bisect_left(tails, key)
            if i == size:
                tails.append(key)
                size += 1
            else:
                tails[i] = key
            if nxt == lo + off:
                out[nxt] = size
                nxt = next(pending, None)
                if nxt is None:
                    break
    return out


def g_prefix(n: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """g(m) for every 0 <= m <= n, as an int32 array, in one streaming pass."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = np.zeros(n + 1, dtype=np.int32)
    if n < 2:
        return out
    tails: list[int] = []
    size = 0
    for lo, vals in lpf_segments(n, segment_size):
        lengths = []
        record = lengths.append
        for key in (-vals).tolist():
            i = bisect_left(tails, key)
            if i == size:
                tails.append(key)
                size += 1
            else:
                tails[i] = key
            record(size)
        out[lo : lo + len(lengths)] = lengths
    return out


def _oracle_dp(values: np.ndarray) -> np.ndarray:
    """dp[i] = length of the longest strict decrease ending at index i (O(n^2))."""
    dp = np.ones(values.size, dtype=np.int32)
    for i in range(1, values.size):
        dp[i] = (dp[:i] * (values[:i] > values[i])).max(initial=0) + 1
    return dp


def _oracle_values(n: int) -> np.ndarray:
    return np.array([largest_prime_factor(m) for m in range(2, n + 1)], dtype=np.int64)


def exact_g_oracle(
    n: int, want_witness: bool = False, cap: int = DEFAULT_ORACLE_CAP
) -> GResult:
    """Independent quadratic-DP reference for exact_g.

    Shares nothing with the patience path: lpf values come from trial
    division and the subsequence length from the O(n^2) recurrence.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise CapExceededError(f"oracle is quadratic; n={n} is over the cap {cap}")
    if n < 2:
        return GResult(n=n, g=0, witness=Chain(n=n, elements=[]) if want_witness else None)
    values = _oracle_values(n)
    dp = _oracle_dp(values)
    g = int(dp.max())
    if not want_witness:
        return GResult(n=n, g=g, witness=None)
    i = int(np.flatnonzero(dp == g)[0])
    picked = [i]
    need = g - 1
    while need:
        j = i - 1
        while not (dp[j] == need and values[j] > values[i]):
            j -= 1
        picked.append(j)
        i = j
        need -= 1
    picked.reverse()
    elements = [(k + 2, int(values[k])) for k in picked]
    return GResult(n=n, g=g, witness=Chain(n=n, elements=elements))


def oracle_g_prefix(n: int, cap: int = DEFAULT_ORACLE_CAP) -> np.ndarray:
    """g(m) for every 0 <= m <= n from the quadratic DP (prefix maxima of dp)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > cap:
        raise CapExceededError(f"oracle is quadratic; n={n} is over the cap {cap}")
    out = np.zeros(n + 1, dtype=np.int32)
    if n >= 2:
        out[2:] = np.maximum.accumulate(_oracle_dp(_oracle_values(n)))
    return out
