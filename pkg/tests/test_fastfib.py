"""Tests for the O(lg n) Fibonacci and Lucas algorithms."""

from __future__ import annotations

import random

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings
from mpmath.libmp import ifib

from goldfib.counters import OpCount
from goldfib.errors import CheckedOverflowError, DomainError
from goldfib.fastfib import (
    BitPlan,
    FastQuad,
    LucasPairState,
    PhiPowerState,
    _halve,
    fib_alternate,
    fib_binet_pow2,
    fib_golden,
    fib_golden_native,
    fib_rgolden,
    fib_takahashi,
    fib_threesquare,
    lucas_golden,
    lucas_rgolden,
    pow_phi,
)
from goldfib.numeric import CheckedInt, PrecisionPolicy, make_phi
from goldfib.sequences import fib_linear, fib_stream, lucas_linear

EXACT_ALGORITHMS = [fib_alternate, fib_threesquare, fib_takahashi, fib_golden, fib_rgolden]
INTEGER_ALGORITHMS = [fib_alternate, fib_threesquare, fib_takahashi]

def _table(count: int) -> list[int]:
    return [v for v, _ in zip(fib_stream(), range(count), strict=False)]


ORACLE = _table(600)


class TestDifferential:
    """Every exact algorithm against the linear oracle."""

    @pytest.mark.parametrize("algorithm", EXACT_ALGORITHMS, ids=lambda f: f.__name__)
    def test_dense_range(self, algorithm):
        """Test: Exact on [0, 600)."""
        for n, expected in enumerate(ORACLE):
            assert algorithm(n) == expected, f"n={n}"

    @pytest.mark.slow
    @pytest.mark.parametrize("algorithm", EXACT_ALGORITHMS, ids=lambda f: f.__name__)
    def test_dense_range_2000(self, algorithm):
        """Test: Exact on [0, 2000]."""
        for n, expected in enumerate(_table(2001)):
            assert algorithm(n) == expected, f"n={n}"

    @pytest.mark.parametrize("algorithm", EXACT_ALGORITHMS, ids=lambda f: f.__name__)
    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(min_value=600, max_value=100_000))
    def test_large_indices(self, algorithm, n):
        """Test: Exact at large indices against mpmath's ifib."""
        assert algorithm(n) == ifib(n)

    @pytest.mark.parametrize("algorithm", EXACT_ALGORITHMS, ids=lambda f: f.__name__)
    def test_negative_index(self, algorithm):
        """Test: Negative indices are domain errors."""
        with pytest.raises(DomainError):
            algorithm(-1)

    def test_rgolden_four(self):
        """Test: Rgolden rounds F4 from φ^4, not φ^2."""
        assert fib_rgolden(4) == 3

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=5000))
    def test_golden_equals_rgolden(self, n):
        """Test: The iterative and recursive powers agree under the adaptive policy."""
        assert fib_golden(n) == fib_rgolden(n)


class TestCheckedIntegers:
    """Tests for integer algorithms on fixed-width words."""

    def test_alternate_64_limit(self):
        """Test: Alternate reaches F92 in 64 bits; F93 overflows."""
        assert fib_alternate(92, width_bits=64) == 7540113804746346429
        with pytest.raises(CheckedOverflowError):
            fib_alternate(93, width_bits=64)

    def test_alternate_32_limit(self):
        """Test: Alternate reaches F46 in 32 bits; F47 overflows."""
        assert fib_alternate(46, width_bits=32) == 1836311903
        with pytest.raises(CheckedOverflowError):
            fib_alternate(47, width_bits=32)

    def test_threesquare_64_limit(self):
        """Test: Three-square reaches F91 in 64 bits; F92 forms F93 on the way and overflows."""
        assert fib_threesquare(91, width_bits=64) == fib_linear(91)
        with pytest.raises(CheckedOverflowError):
            fib_threesquare(92, width_bits=64)

    @pytest.mark.parametrize("algorithm", INTEGER_ALGORITHMS, ids=lambda f: f.__name__)
    def test_checked_matches_exact(self, algorithm):
        """Test: Where they do not overflow, checked runs agree with exact runs."""
        for n in range(0, 40):
            assert algorithm(n, width_bits=64) == fib_linear(n)


class TestOpCounts:
    """Exact operation counts."""

    @pytest.mark.parametrize("m", range(1, 17))
    def test_powers_of_two(self, m):
        """Test: n = 2^m costs Golden m squarings and one multiply, Alternate 2m multiplies."""
        n = 1 << m
        golden = OpCount()
        fib_golden(n, counter=golden)
        assert golden.squares == m
        assert golden.mults == 1

        alternate = OpCount()
        fib_alternate(n, alternate)
        assert alternate.mults == 2 * m
        assert alternate.squares == 0

    def test_alternate_1024(self):
        """Test: 20 multiplications for n = 1024."""
        ops = OpCount()
        fib_alternate(1024, ops)
        assert ops.mults == 20
        assert ops.iters == 10

    def test_alternate_additions(self):
        """Test: 4 or 5 additions per non-final iteration, 3 or 4 on the final one."""
        ops = OpCount()
        fib_alternate(0b1011, ops)
        # bits below the top: 0, 1, 1 -> 4 + 5 + 4
        assert ops.adds == 13

    @given(st.integers(min_value=1, max_value=1 << 20))
    def test_golden_counts(self, n):
        """Test: ⌊lg n⌋ squarings and popcount(⌊n/2⌋) multiplications."""
        ops = OpCount()
        pow_phi(n, 64, ops)
        assert ops.squares == n.bit_length() - 1
        assert ops.mults == bin(n >> 1).count("1")
        assert ops.iters == n.bit_length() - 1

    def test_golden_mean_multiplies(self):
        """Test: Over n in [2^16, 2^17) the mean multiply count is close to 8.5."""
        rng = random.Random(1202)
        counts = []
        for _ in range(1000):
            ops = OpCount()
            pow_phi(rng.randrange(1 << 16, 1 << 17), 64, ops)
            counts.append(ops.mults)
        # popcount(n >> 1): a fixed top bit plus 15 uniform bits
        assert abs(sum(counts) / len(counts) - 8.5) <= 0.2

    @given(st.integers(min_value=3, max_value=1 << 20))
    def test_threesquare_counts(self, n):
        """Test: Three squarings per bit below the top."""
        ops = OpCount()
        fib_threesquare(n, ops)
        assert ops.squares == 3 * (n.bit_length() - 1)
        assert ops.mults == 0

    @given(st.integers(min_value=3, max_value=1 << 20))
    def test_takahashi_counts(self, n):
        """Test: Two squarings per loop step and one product in the epilogue."""
        ops = OpCount()
        fib_takahashi(n, ops)
        steps = n.bit_length() - 2
        assert ops.squares == 2 * steps
        assert ops.iters == steps
        assert ops.mults == 1

    def test_rgolden_depth(self):
        """Test: Rgolden recurses ⌊lg n⌋ + 1 times."""
        ops = OpCount()
        fib_rgolden(1000, counter=ops)
        assert ops.iters == 10
        assert ops.squares == 9


class TestTraces:
    """Loop-state traces."""

    def test_alternate_trace_six(self):
        """Test: n = 6 passes through k = 3 and ends at k = 6 without F7."""
        states: list[FastQuad] = []
        assert fib_alternate(6, trace=states.append) == 8
        assert states == [FastQuad(1, 1, 2, 3, 3), FastQuad(3, 5, 8, None, 6)]

    @pytest.mark.parametrize("n", [7, 100, 1023, 4096, 12345])
    def test_alternate_adjacency(self, n):
        """Test: Each state holds four adjacent terms at k."""
        states: list[FastQuad] = []
        fib_alternate(n, trace=states.append)
        for state in states:
            k = state.k
            assert (state.fll, state.fl, state.fm) == (
                fib_linear(k - 2),
                fib_linear(k - 1),
                fib_linear(k),
            )
            if state.fh is not None:
                assert state.fh == fib_linear(k + 1)
        assert states[-1].k == n

    @pytest.mark.parametrize("n", [5, 64, 999, 65535])
    def test_takahashi_invariant(self, n):
        """Test: l² − 5f² = 4·sign after every step."""
        states: list[LucasPairState] = []
        fib_takahashi(n, trace=states.append)
        assert len(states) == n.bit_length() - 2
        for state in states:
            assert state.l * state.l - 5 * state.f * state.f == 4 * state.sign

    def test_golden_trace(self):
        """Test: One state per loop head, i halving from n."""
        states: list[PhiPowerState] = []
        pow_phi(13, 200, trace=states.append)
        assert [s.i for s in states] == [13, 6, 3]

    def test_bit_plan(self):
        """Test: Bits below the leading one, most significant first."""
        assert BitPlan.for_index(0b1011).mark_odd == (False, True, True)
        assert len(BitPlan.for_index(1)) == 0


class TestRealPolicies:
    """φ-power methods under lossy precision."""

    def test_double_exact_region(self):
        """Test: 53-bit Golden and Rgolden are exact up to n = 70."""
        policy = PrecisionPolicy.hardware_double()
        for n in range(71):
            assert fib_golden(n, policy) == fib_linear(n)
            assert fib_rgolden(n, policy) == fib_linear(n)

    def test_double_fails_eventually(self):
        """Test: 53-bit Golden is wrong somewhere below 100."""
        policy = PrecisionPolicy.hardware_double()
        assert any(fib_golden(n, policy) != fib_linear(n) for n in range(70, 100))

    def test_native_matches_linear(self):
        """Test: Golden on native doubles is exact for small n."""
        for n in range(61):
            assert fib_golden_native(n) == fib_linear(n)

    def test_pow_phi_one(self):
        """Test: φ^1 is φ itself."""
        assert pow_phi(1, 80) == make_phi(80)


class TestBinet:
    """The power-of-two Binet recursion."""

    @pytest.mark.parametrize("m", range(0, 15))
    def test_powers_of_two(self, m):
        """Test: Exact at n = 2^m."""
        assert fib_binet_pow2(1 << m) == ifib(1 << m)

    @pytest.mark.slow
    def test_large_powers_of_two(self):
        """Test: Exact up to 2^20."""
        for m in range(15, 21):
            assert fib_binet_pow2(1 << m) == ifib(1 << m)

    @pytest.mark.parametrize("n", [0, 3, 6, 12, 1000])
    def test_domain(self, n):
        """Test: Indices that are not powers of two are domain errors."""
        with pytest.raises(DomainError):
            fib_binet_pow2(n)

    def test_counts(self):
        """Test: One square and one multiply per level above F2."""
        ops = OpCount()
        fib_binet_pow2(1024, counter=ops)
        assert ops.squares == 9
        assert ops.mults == 9

    def test_policy_precision(self):
        """Test: An adaptive policy supplies its own precision."""
        assert fib_binet_pow2(256, policy=PrecisionPolicy.adaptive(8)) == ifib(256)


class TestLucas:
    """Lucas numbers from φ powers."""

    @pytest.mark.parametrize("algorithm", [lucas_golden, lucas_rgolden], ids=lambda f: f.__name__)
    def test_dense_range(self, algorithm):
        """Test: Exact on [0, 500)."""
        for n in range(500):
            assert algorithm(n) == lucas_linear(n), f"n={n}"

    def test_table_values(self):
        """Test: L0 and L1 come from the table."""
        assert lucas_golden(0) == 2
        assert lucas_golden(1) == 1


class TestExactHalving:
    """Tests for the halving step of Takahashi's method."""

    def test_even(self):
        """Test: Even operands halve exactly, plain or checked."""
        assert _halve(10) == 5
        assert _halve(CheckedInt(10, 64)) == 5

    def test_odd_operand(self):
        """Test: An odd operand is a domain error, not a silent floor."""
        with pytest.raises(DomainError):
            _halve(7)
        with pytest.raises(DomainError):
            _halve(CheckedInt(7, 32))
