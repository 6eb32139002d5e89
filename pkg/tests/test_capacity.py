"""Tests for capacity estimates and overflow probes."""

from __future__ import annotations

import pytest

from goldfib.capacity import (
    ProbeMode,
    estimate,
    estimate_bits,
    estimate_max_index,
    probe_max_index,
    table1,
)
from goldfib.errors import AlgorithmNotFoundError, ConfigurationError, DomainError
from goldfib.numeric import PrecisionPolicy
from goldfib.sequences import fib_stream


class TestEstimates:
    """Tests for the closed-form estimates."""

    @pytest.mark.parametrize("n,eta", [(256, 177), (1 << 17, 90995), (92, 63), (2, 1)])
    def test_estimate_bits(self, n, eta):
        """Test: Forward direction."""
        assert estimate_bits(n) == eta

    @pytest.mark.parametrize(
        "eta,n_hat", [(63, 91), (31, 45), (24, 35), (53, 77), (127, 184)]
    )
    def test_estimate_max_index(self, eta, n_hat):
        """Test: Inverse direction, ceiling of the quotient."""
        assert estimate_max_index(eta) == n_hat

    def test_estimate_model(self):
        """Test: CapacityEstimate bundles both numbers."""
        result = estimate(63)
        assert result.eta == 63
        assert result.n_hat == 91

    def test_round_trip(self):
        """Test: estimate_max_index(estimate_bits(n)) is n − 1 or n."""
        for n in range(2, 10_001):
            assert estimate_max_index(estimate_bits(n)) in (n - 1, n), f"n={n}"

    def test_bit_length_anchor(self):
        """Test: Within one bit of the real bit length of F(n)."""
        stream = fib_stream()
        next(stream)
        next(stream)
        for n in range(2, 2001):
            assert abs(estimate_bits(n) - next(stream).bit_length()) <= 1, f"n={n}"

    def test_domain(self):
        """Test: Zero and negative inputs are domain errors."""
        with pytest.raises(DomainError):
            estimate_bits(0)
        with pytest.raises(DomainError):
            estimate_max_index(0)


class TestProbeMode:
    """Tests for probe mode parsing."""

    @pytest.mark.parametrize("name", ["i32", "i64", "f64", "f32", "trunc9"])
    def test_names_round_trip(self, name):
        """Test: Every mode name parses and prints back."""
        assert ProbeMode.from_name(name).name == name

    def test_checked_widths(self):
        """Test: Integer modes carry their width."""
        assert ProbeMode.from_name("i32").width_bits == 32
        assert ProbeMode.from_name("i64").policy is None

    def test_unknown_mode(self):
        """Test: Unknown names are configuration errors."""
        with pytest.raises(ConfigurationError):
            ProbeMode.from_name("i128")


class TestProbe:
    """Tests for empirical probes."""

    def test_alternate_64(self):
        """Test: Alternate in 64 bits stops at 92 from overflow."""
        result = probe_max_index(ProbeMode.from_name("i64"), "alternate")
        assert result.n_max == 92
        assert result.failure_kind == "overflow"
        assert result.first_bad_delta is None

    def test_alternate_32(self):
        """Test: Alternate in 32 bits stops at 46 from overflow."""
        result = probe_max_index(ProbeMode.from_name("i32"), "fib_alternate")
        assert result.n_max == 46
        assert result.failure_kind == "overflow"

    @pytest.mark.parametrize("mode,eta", [("i32", 31), ("i64", 63)])
    @pytest.mark.parametrize("algorithm", ["linear", "alternate"])
    def test_integer_probe_near_estimate(self, mode, eta, algorithm):
        """Test: Integer limits sit 0 to 2 above the estimate."""
        result = probe_max_index(ProbeMode.from_name(mode), algorithm)
        assert result.n_max - estimate_max_index(eta) in (0, 1, 2)

    def test_golden_double(self):
        """Test: 53-bit Golden fails in the mid seventies, off by a little."""
        result = probe_max_index(ProbeMode.from_name("f64"), "golden")
        assert 71 <= result.n_max <= 76
        assert result.failure_kind == "mismatch"
        assert result.first_bad_delta is not None
        assert 1 <= result.first_bad_delta <= 2
        assert result.n_max <= estimate_max_index(53)

    def test_golden_single(self):
        """Test: 24-bit Golden fails below the 24-bit estimate."""
        result = probe_max_index(ProbeMode.from_name("f32"), "golden")
        assert result.failure_kind == "mismatch"
        assert result.n_max <= estimate_max_index(24)

    def test_golden_truncated(self):
        """Test: Nine-place constants fail in the mid thirties."""
        result = probe_max_index(ProbeMode.from_name("trunc9"), "golden")
        assert 34 <= result.n_max <= 38
        assert result.failure_kind == "mismatch"
        assert result.first_bad_delta == 1

    def test_lucas_probe(self):
        """Test: Lucas algorithms probe against the Lucas oracle."""
        result = probe_max_index(ProbeMode.from_name("i64"), "lucas_linear")
        assert result.n_max == 90
        assert result.failure_kind == "overflow"

    def test_bound_reached(self):
        """Test: A mode that never fails stops at the bound."""
        mode = ProbeMode.float_mode(PrecisionPolicy.adaptive())
        result = probe_max_index(mode, "golden", bound=50)
        assert result.n_max == 50
        assert result.failure_kind == "none"
        assert result.reached_bound

    @pytest.mark.parametrize(
        "mode,algorithm",
        [("i64", "golden"), ("f64", "alternate"), ("f64", "binet"), ("i32", "rgolden")],
    )
    def test_incompatible(self, mode, algorithm):
        """Test: Mode and algorithm kinds must match."""
        with pytest.raises(ConfigurationError):
            probe_max_index(ProbeMode.from_name(mode), algorithm)

    def test_unknown_algorithm(self):
        """Test: Unknown algorithms are reported with the available names."""
        with pytest.raises(AlgorithmNotFoundError) as exc_info:
            probe_max_index(ProbeMode.from_name("i64"), "cullhow")
        assert "alternate" in exc_info.value.available_algorithms


class TestTable1:
    """Tests for the estimate-versus-probe table."""

    def test_rows(self):
        """Test: Estimates and integer probes of every row."""
        rows = table1()
        assert [r.eta for r in rows[:4]] == [24, 31, 53, 63]
        assert [r.n_hat for r in rows[:4]] == [35, 45, 77, 91]
        assert rows[1].integer_actual == 46
        assert rows[3].integer_actual == 92
        assert rows[0].integer_actual is None
        assert rows[3].golden_actual is None
        assert rows[2].golden_actual is not None
        assert 71 <= rows[2].golden_actual <= 76

    def test_forward_row(self):
        """Test: The last row is the bit count of F(2^17)."""
        row = table1()[-1]
        assert row.eta == 90995
        assert row.n_hat == 1 << 17

    def test_render(self):
        """Test: Missing cells print as na."""
        line = table1()[0].render()
        assert "na" in line
        assert "32 float" in line
