"""Tests for the algorithm registry."""

from __future__ import annotations

import pytest

from goldfib.counters import OpCount
from goldfib.errors import AlgorithmNotFoundError, ConfigurationError, DomainError
from goldfib.numeric import PrecisionPolicy
from goldfib.registry import AlgorithmInfo, Registry, default_registry

EXPECTED_NAMES = [
    "alternate",
    "binet",
    "golden",
    "linear",
    "lucas_golden",
    "lucas_linear",
    "lucas_rgolden",
    "rgolden",
    "takahashi",
    "threesquare",
]


@pytest.fixture
def registry():
    return default_registry()


class TestRegistry:
    """Tests for Registry lookups and runs."""

    def test_names(self, registry):
        """Test: Every algorithm is registered."""
        assert registry.list_names() == EXPECTED_NAMES

    def test_prefix(self, registry):
        """Test: A fib_ prefix is accepted."""
        assert registry.get("fib_takahashi").name == "takahashi"

    def test_unknown(self, registry):
        """Test: Unknown names list what is available."""
        with pytest.raises(AlgorithmNotFoundError) as exc_info:
            registry.get("tumble")
        assert exc_info.value.available_algorithms == EXPECTED_NAMES
        assert exc_info.value.code == "ALGORITHM_NOT_FOUND"

    def test_kinds(self, registry):
        """Test: Integer and real algorithms are told apart."""
        integer = [info.name for info in registry.list_algorithms("integer")]
        assert integer == ["alternate", "linear", "lucas_linear", "takahashi", "threesquare"]
        assert registry.get("binet").domain == "pow2"

    @pytest.mark.parametrize("name", EXPECTED_NAMES)
    def test_run_small_index(self, registry, name):
        """Test: Every runner answers at n = 8."""
        expected = 47 if name.startswith("lucas") else 21
        assert registry.run(name, 8) == expected

    def test_run_counts(self, registry):
        """Test: The counter passed in is the one updated."""
        ops = OpCount()
        registry.run("alternate", 1024, ops)
        assert ops.mults == 20

    def test_width_on_real_algorithm(self, registry):
        """Test: A checked width on a real algorithm is a configuration error."""
        with pytest.raises(ConfigurationError):
            registry.run("golden", 10, width_bits=64)

    def test_lossy_policy_on_integer_algorithm(self, registry):
        """Test: A lossy policy on an integer algorithm is a configuration error."""
        with pytest.raises(ConfigurationError):
            registry.run("alternate", 10, policy=PrecisionPolicy.hardware_double())

    def test_adaptive_policy_on_integer_algorithm(self, registry):
        """Test: The exact policy is accepted everywhere."""
        assert registry.run("alternate", 10, policy=PrecisionPolicy.adaptive()) == 55

    def test_binet_domain(self, registry):
        """Test: Binet off powers of two propagates the domain error."""
        with pytest.raises(DomainError):
            registry.run("binet", 6)

    def test_duplicate_registration(self):
        """Test: Registering a name twice is rejected."""
        registry = Registry()
        info = AlgorithmInfo(name="zero", kind="integer", summary="always zero")
        registry.register(info, lambda n, ops, width, policy: 0)
        with pytest.raises(ConfigurationError):
            registry.register(info, lambda n, ops, width, policy: 0)

    def test_describe(self, registry):
        """Test: One line per algorithm."""
        text = registry.describe()
        lines = text.splitlines()
        assert lines[0] == "Available algorithms:"
        assert len(lines) == 1 + len(EXPECTED_NAMES)
        assert any(line.startswith("  - takahashi [int, fibonacci]") for line in lines)
