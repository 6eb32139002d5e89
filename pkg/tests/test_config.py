"""Tests for configuration loading."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from goldfib.config import ToolkitConfig, load_config
from goldfib.errors import UsageError

EXAMPLE = Path(__file__).parent.parent / "config.example.json"


class TestToolkitConfig:
    """Tests for the config model."""

    def test_defaults(self):
        """Test: Defaults."""
        config = ToolkitConfig()
        assert config.guard_bits == 64
        assert config.binet_guard_bits == 32
        assert config.decimal_places == 9
        assert config.probe_bound == 1_000_000
        assert config.bench_reps == 11
        assert config.bench_warmup == 2
        assert config.verify_random_samples == 64
        assert config.verify_random_max == 100_000
        assert config.verify_seed == 1202

    def test_unknown_keys_ignored(self):
        """Test: Extra keys do not fail validation."""
        config = ToolkitConfig(**{"guard_bits": 16, "colour": "gold"})
        assert config.guard_bits == 16

    def test_policy(self):
        """Test: Policies pick up guard bits and decimal places."""
        config = ToolkitConfig(guard_bits=10, decimal_places=6)
        assert config.policy("adaptive").guard_bits == 10
        assert config.policy("trunc9").places == 6

    def test_verify_settings(self):
        """Test: Verify sampling knobs carry over."""
        settings = ToolkitConfig(verify_random_samples=3, verify_seed=9).verify_settings()
        assert settings.random_samples == 3
        assert settings.seed == 9


class TestLoadConfig:
    """Tests for load_config."""

    def test_no_path(self):
        """Test: No path gives the defaults."""
        assert load_config(None) == ToolkitConfig()

    def test_load_file(self, tmp_path):
        """Test: Values are read from JSON."""
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"bench_reps": 5, "probe_bound": 200}))
        config = load_config(path)
        assert config.bench_reps == 5
        assert config.probe_bound == 200

    def test_example_file(self):
        """Test: The shipped example loads and matches the defaults."""
        assert load_config(EXAMPLE) == ToolkitConfig()

    def test_missing_file(self):
        """Test: A missing file is a usage error."""
        with pytest.raises(UsageError):
            load_config(Path("/nonexistent/config.json"))

    def test_invalid_json(self, tmp_path):
        """Test: Invalid JSON is a usage error."""
        path = tmp_path / "config.json"
        path.write_text("{invalid json}")
        with pytest.raises(UsageError):
            load_config(path)

    def test_invalid_structure(self, tmp_path):
        """Test: Values that fail validation are a usage error."""
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"bench_reps": 1}))
        with pytest.raises(UsageError):
            load_config(path)

    def test_top_level_list(self, tmp_path):
        """Test: A non-object document is a usage error."""
        path = tmp_path / "config.json"
        path.write_text("[1, 2]")
        with pytest.raises(UsageError):
            load_config(path)
