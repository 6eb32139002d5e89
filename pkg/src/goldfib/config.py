"""Toolkit configuration model and loader."""

from __future__ import annotations

import json
import logging
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError

from goldfib.errors import UsageError
from goldfib.numeric import PrecisionPolicy
from goldfib.verify import VerifySettings

logger = logging.getLogger(__name__)

__all__ = ["ToolkitConfig", "load_config"]


class ToolkitConfig(BaseModel):
    """Toolkit configuration. Unknown keys are ignored."""

    # Precision
    guard_bits: int = Field(default=64, ge=0)
    binet_guard_bits: int = Field(default=32, ge=0)
    decimal_places: int = Field(default=9, ge=1)

    # Probing
    probe_bound: int = Field(default=1_000_000, ge=1)

    # Benchmarking
    bench_reps: int = Field(default=11, ge=3)
    bench_warmup: int = Field(default=2, ge=1)

    # Verification sampling
    verify_random_samples: int = Field(default=64, ge=0)
    verify_random_max: int = Field(default=100_000, ge=0)
    verify_seed: int = 1202

    def policy(self, name: str) -> PrecisionPolicy:
        """Precision policy for a cli spelling, with this config's guard bits and places."""
        return PrecisionPolicy.from_name(
            name, guard_bits=self.guard_bits, places=self.decimal_places
        )

    def verify_settings(self) -> VerifySettings:
        return VerifySettings(
            random_samples=self.verify_random_samples,
            random_max=self.verify_random_max,
            seed=self.verify_seed,
        )


def load_config(config_path: Path | None) -> ToolkitConfig:
    """Load configuration from a JSON file, or the defaults when no path is given.

    Raises:
        UsageError: If the file is missing, is not JSON or has an invalid structure
    """
    if config_path is None:
        return ToolkitConfig()

    if not config_path.exists():
        raise UsageError(f"Config file not found: {config_path}")

    try:
        with open(config_path) as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise UsageError(f"Invalid JSON in config file: {e}") from e

    if not isinstance(data, dict):
        raise UsageError("Invalid config structure: top level must be an object")

    try:
        config = ToolkitConfig(**data)
    except ValidationError as e:
        raise UsageError(f"Invalid config structure: {e}") from e

    logger.info(f"Loaded config from {config_path}")
    return config
