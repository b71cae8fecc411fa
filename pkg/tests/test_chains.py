import numpy as np
import pytest
from conftest import ref_lpf, ref_strict_lds
from hypothesis import given, settings
from hypothesis import strategies as st

from lpfchains import (
    CapExceededError,
    Chain,
    exact_g,
    exact_g_many,
    exact_g_oracle,
    g_prefix,
    largest_prime_factor,
    oracle_g_prefix,
    strict_lds_length,
    validate_chain,
)

# g(n) for n = 1..12, by exhaustive check over all subsequences of P(2..n).
G_SMALL = [0, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3]


class TestLargestPrimeFactor:
    def test_known_values(self):
        assert largest_prime_factor(2) == 2
        assert largest_prime_factor(6) == 3
        assert largest_prime_factor(49) == 7
        assert largest_prime_factor(99) == 11
        assert largest_prime_factor(2**20) == 2

    def test_rejects_below_two(self):
        with pytest.raises(ValueError):
            largest_prime_factor(1)

    @given(st.integers(min_value=2, max_value=10**6))
    def test_matches_reference(self, m):
        assert largest_prime_factor(m) == ref_lpf(m)


class TestStrictLds:
    def test_empty(self):
        assert strict_lds_length([]) == 0

    def test_whole_list_decreasing(self):
        assert strict_lds_length([5, 3, 2]) == 3

    def test_lpf_values_to_ten(self):
        assert strict_lds_length([2, 3, 2, 5, 3, 7, 2, 3, 5]) == 3

    def test_equal_values_do_not_extend(self):
        assert strict_lds_length([4, 4, 4]) == 1
        assert strict_lds_length([5, 4, 4, 3]) == 3

    @settings(max_examples=200)
    @given(st.lists(st.integers(min_value=0, max_value=30), max_size=60))
    def test_matches_quadratic_dp(self, values):
        assert strict_lds_length(values) == ref_strict_lds(values)


class TestExactG:
    def test_small_values(self):
        assert [exact_g(n).g for n in range(1, 13)] == G_SMALL

    def test_n1_owing_to_undefined_p1(self):
        r = exact_g(1, want_witness=True)
        assert r.g == 0 and len(r.witness) == 0

    def test_n4_with_witness(self):
        r = exact_g(4, want_witness=True)
        assert r.g == 2
        assert validate_chain(r.witness).ok and len(r.witness) == 2

    def test_n10_with_witness(self):
        r = exact_g(10, want_witness=True)
        assert r.g == 3
        assert validate_chain(r.witness).ok and len(r.witness) == 3

    def test_witness_cap(self):
        with pytest.raises(CapExceededError):
            exact_g(1000, want_witness=True, witness_cap=100)

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(min_value=1, max_value=3000))
    def test_witness_sound(self, n):
        r = exact_g(n, want_witness=True)
        assert len(r.witness) == r.g
        assert validate_chain(r.witness).ok

    @settings(max_examples=25, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=2000),
        segment_size=st.integers(min_value=1, max_value=512),
    )
    def test_segment_size_irrelevant(self, n, segment_size):
        assert exact_g(n, segment_size=segment_size).g == exact_g(n).g


class TestOracle:
    def test_small_values(self):
        assert exact_g_oracle(2).g == 1
        assert exact_g_oracle(3).g == 1
        assert exact_g_oracle(10).g == 3

    def test_cap(self):
        with pytest.raises(CapExceededError):
            exact_g_oracle(10**6)

    def test_witness(self):
        r = exact_g_oracle(100, want_witness=True)
        assert r.g == len(r.witness) == 8
        assert validate_chain(r.witness).ok

    def test_agrees_with_patience_to_200(self):
        for n in range(1, 201):
            assert exact_g(n).g == exact_g_oracle(n).g

    def test_prefix_matches_per_n_calls(self):
        pref = oracle_g_prefix(60)
        assert [int(v) for v in pref[1:]] == [exact_g_oracle(n).g for n in range(1, 61)]


class TestPrefixAndMany:
    def test_prefix_matches_oracle_prefix_to_2000(self):
        assert (g_prefix(2000) == oracle_g_prefix(2000)).all()

    def test_prefix_monotone_nondecreasing(self):
        g = g_prefix(5000)
        assert (np.diff(g) >= 0).all()

    def test_prefix_matches_exact_g_samples(self):
        g = g_prefix(1500)
        for n in (1, 2, 3, 17, 256, 999, 1500):
            assert int(g[n]) == exact_g(n).g

    def test_many_matches_prefix(self):
        ns = [1, 2, 5, 64, 700, 701, 1200]
        got = exact_g_many(ns)
        g = g_prefix(1200)
        assert got == {n: int(g[n]) for n in ns}

    def test_many_empty(self):
        assert exact_g_many([]) == {}


class TestValidateChain:
    def test_greedy_chain_at_100_is_valid(self):
        chain = Chain(n=100, elements=[(19, 19), (34, 17), (39, 13), (44, 11)])
        assert validate_chain(chain).ok

    def test_a_not_increasing(self):
        verdict = validate_chain(Chain(n=10, elements=[(4, 2), (3, 3)]))
        assert not verdict.ok
        assert verdict.code == "a_not_increasing" and verdict.index == 1

    def test_p_mismatch(self):
        verdict = validate_chain(Chain(n=10, elements=[(6, 2)]))
        assert not verdict.ok
        assert verdict.code == "p_mismatch" and verdict.index == 0

    def test_a_out_of_bounds(self):
        verdict = validate_chain(Chain(n=10, elements=[(11, 11)]))
        assert verdict.code == "a_out_of_bounds"
        verdict = validate_chain(Chain(n=10, elements=[(1, 2)]))
        assert verdict.code == "a_out_of_bounds"

    def test_p_not_decreasing(self):
        verdict = validate_chain(Chain(n=20, elements=[(3, 3), (9, 3)]))
        assert verdict.code == "p_not_decreasing" and verdict.index == 1

    def test_empty_chain_valid(self):
        assert validate_chain(Chain(n=5, elements=[])).ok


class TestSerialization:
    def test_csv_round_trip(self):
        chain = exact_g(50, want_witness=True).witness
        back = Chain.from_csv(chain.to_csv(), n=50)
        assert back.elements == chain.elements
        assert validate_chain(back).ok

    def test_json_round_trip(self):
        chain = exact_g(50, want_witness=True).witness
        back = Chain.from_json(chain.to_json(), n=50)
        assert back.elements == chain.elements
        assert validate_chain(back).ok

    def test_csv_shape(self):
        chain = Chain(n=10, elements=[(5, 5), (6, 3)])
        assert chain.to_csv() == "i,a,p\n1,5,5\n2,6,3\n"

    def test_json_shape(self):
        chain = Chain(n=10, elements=[(5, 5)])
        assert chain.to_json() == '[{"a": 5, "p": 5}]'
