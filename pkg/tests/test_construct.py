import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpfchains import (
    Chain,
    EmptyIntervalError,
    adaptive_greedy,
    best_construction,
    exact_g,
    interval_greedy,
    primes_up_to,
    validate_chain,
)
from lpfchains.construct import _greedy_walk

INTERVAL_BOUND_100 = math.sqrt(100 * math.log(100))  # ~21.4597

# Hand-executed minimal-multiple recurrence on the primes in (10, 21.46).
GREEDY_100 = [(19, 19), (34, 17), (39, 13), (44, 11)]

# Hand-executed adaptive runs (see docstrings below for the q >= p cases).
ADAPTIVE_100_PAPER_BOUND = GREEDY_100 + [(49, 7), (50, 5)]
ADAPTIVE_100_FULL = [(97, 97), (99, 11), (100, 5)]


class TestPaperGreedy:
    def test_n100_trace(self):
        trace = interval_greedy(100)
        assert trace.primes_used == [19, 17, 13, 11]
        assert trace.qs == [1, 2, 3, 4]
        assert trace.chain.elements == GREEDY_100
        assert trace.overshoot_index is None

    def test_n100_partial_sums_dominate(self):
        trace = interval_greedy(100)
        assert trace.partial_sums == [19, 36, 49, 60]
        for (a, _), s in zip(trace.elements, trace.partial_sums):
            assert a <= s

    def test_n25_single_prime(self):
        trace = interval_greedy(25)
        assert trace.primes_used == [7]
        assert trace.chain.elements == [(7, 7)]

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 9, 10])
    def test_empty_interval(self, n):
        with pytest.raises(EmptyIntervalError):
            interval_greedy(n)

    @pytest.mark.parametrize("n", [6, 7, 8, 11])
    def test_just_past_empty_interval(self, n):
        assert len(interval_greedy(n).chain) >= 1

    def test_chain_is_valid(self):
        for n in (6, 25, 100, 5000, 99991):
            assert validate_chain(interval_greedy(n).chain).ok

    def test_rejects_n_below_two(self):
        with pytest.raises(ValueError):
            interval_greedy(1)

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(min_value=11, max_value=50000))
    def test_lemmas(self, n):
        """Step bound a_i < a_{i-1} + p_i and partial-sum bound a_i <= sum p_j."""
        trace = interval_greedy(n)
        a = [x for x, _ in trace.elements]
        for i in range(1, len(a)):
            assert a[i] < a[i - 1] + trace.primes_used[i]
        for x, s in zip(a, trace.partial_sums):
            assert x <= s

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(min_value=11, max_value=20000))
    def test_dominated_by_exact(self, n):
        assert len(interval_greedy(n).chain) <= exact_g(n).g

    def test_walk_truncates_on_overshoot(self):
        # Fabricated prime list makes the third element overshoot n=10.
        qs, elements, sums, overshoot = _greedy_walk([7, 5, 3], 10)
        assert elements == [(7, 7), (10, 5), (12, 3)]
        assert qs == [1, 2, 4] and sums == [7, 12, 15]
        assert overshoot == 2

    @settings(max_examples=30, deadline=None)
    @given(n=st.integers(min_value=11, max_value=10**5))
    def test_full_length_regime(self, n):
        """When every partial sum fits under n the chain uses all r interval
        primes, and r is the difference of prime counts at the endpoints."""
        import math

        from lpfchains import primes_up_to
        from lpfchains.floors import floor_sqrt_nlogn

        trace = interval_greedy(n)
        if trace.partial_sums[-1] <= n:
            table = primes_up_to(floor_sqrt_nlogn(n))
            r = table.prime_count(floor_sqrt_nlogn(n)) - table.prime_count(
                math.isqrt(n)
            )
            assert len(trace.chain) == len(trace.primes_used) == r

    def test_trace_csv(self):
        assert interval_greedy(100).to_csv() == (
            "i,a,p,q,partial_sum,overshoot_flag\n"
            "1,19,19,1,19,0\n"
            "2,34,17,2,36,0\n"
            "3,39,13,3,49,0\n"
            "4,44,11,4,60,0\n"
        )


class TestAdaptiveGreedy:
    def test_interval_bound_extends_past_interval(self):
        """Below the interval, 49 = 7*7 and 50 = 2*5^2 still fit under 100, so
        the adaptive run strictly extends the interval greedy; 51 = 3*17 is
        skipped because its largest prime factor is not 3."""
        chain = adaptive_greedy(100, INTERVAL_BOUND_100)
        assert chain.elements == ADAPTIVE_100_PAPER_BOUND
        assert validate_chain(chain).ok

    def test_interval_chain_is_a_prefix_at_interval_bound(self):
        chain = adaptive_greedy(100, INTERVAL_BOUND_100)
        assert chain.elements[:4] == interval_greedy(100).chain.elements

    def test_full_start_bound(self):
        """From 97 down: every prime in (50, 97) needs q >= 2 and overshoots;
        99 = 9*11 and 100 = 4*25 land; the guard accepts 100 with q=20 >= p=5
        because P(100) = 5."""
        chain = adaptive_greedy(100, 100)
        assert chain.elements == ADAPTIVE_100_FULL
        assert validate_chain(chain).ok

    def test_n2(self):
        assert adaptive_greedy(2, 2).elements == [(2, 2)]

    def test_trivial_bound_small_n(self):
        assert adaptive_greedy(4, 2).elements == [(2, 2)]

    def test_start_bound_validated(self):
        with pytest.raises(ValueError):
            adaptive_greedy(100, 1.5)
        with pytest.raises(ValueError):
            adaptive_greedy(100, 101)

    def test_deterministic(self):
        a = adaptive_greedy(3000, 1700.0)
        b = adaptive_greedy(3000, 1700.0)
        assert a.elements == b.elements

    @settings(max_examples=40, deadline=None)
    @given(data=st.data(), n=st.integers(min_value=2, max_value=5000))
    def test_valid_and_dominated(self, data, n):
        bound = data.draw(st.floats(min_value=2.0, max_value=float(n)))
        chain = adaptive_greedy(n, bound)
        assert validate_chain(chain).ok
        assert len(chain) <= exact_g(n).g


class TestBestConstruction:
    def test_sweep_dominates_interval_greedy(self):
        assert len(best_construction(100, [INTERVAL_BOUND_100])) >= 4

    def test_n10_bounded_by_exact(self):
        chain = best_construction(10, [10])
        assert validate_chain(chain).ok
        assert 1 <= len(chain) <= exact_g(10).g == 3

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 9, 10, 11, 64, 100])
    def test_trivial_sweep_never_empty(self, n):
        assert len(best_construction(n, [2])) >= 1

    def test_tie_prefers_smaller_bound(self):
        # At n=3 both bounds give length-1 chains; the smaller bound wins.
        assert best_construction(3, [2, 3]).elements == [(2, 2)]

    def test_rejects_empty_bounds(self):
        with pytest.raises(ValueError):
            best_construction(100, [])

    def test_shared_table(self):
        table = primes_up_to(10**4)
        a = best_construction(900, [2, 30, 900], table=table)
        b = best_construction(900, [2, 30, 900])
        assert a.elements == b.elements

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(min_value=2, max_value=3000))
    def test_dominates_interval_greedy_everywhere(self, n):
        try:
            greedy_len = len(interval_greedy(n).chain)
        except EmptyIntervalError:
            greedy_len = 0
        bound = max(2.0, min(float(n), math.sqrt(n * math.log(n))))
        best = best_construction(n, [bound])
        assert len(best) >= greedy_len
        assert validate_chain(best).ok
