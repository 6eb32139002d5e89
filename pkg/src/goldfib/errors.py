"""Unified error types."""

from __future__ import annotations

from typing import Any


class GoldfibError(Exception):
    """Base error for the toolkit."""

    def __init__(self, message: str, code: str | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.code = code or "UNKNOWN_ERROR"

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary format."""
        return {"error": self.message, "code": self.code}


class DomainError(GoldfibError):
    """An index or value outside the domain of an operation."""

    def __init__(self, message: str, value: int | None = None) -> None:
        self.value = value
        super().__init__(message, "DOMAIN_ERROR")

    def to_dict(self) -> dict[str, Any]:
        result = super().to_dict()
        if self.value is not None:
            result["value"] = str(self.value)
        return result


class CheckedOverflowError(GoldfibError):
    """A fixed-width integer operation left its representable range."""

    def __init__(self, op: str, operands: tuple[int, ...], width_bits: int) -> None:
        self.op = op
        self.operands = operands
        self.width_bits = width_bits
        shown = ", ".join(str(v) for v in operands)
        super().__init__(
            f"{width_bits}-bit overflow in {op}({shown})",
            "OVERFLOW",
        )

    def to_dict(self) -> dict[str, Any]:
        result = super().to_dict()
        result["width_bits"] = self.width_bits
        result["op"] = self.op
        return result


class ConfigurationError(GoldfibError):
    """Invalid combination of inputs for a library call."""

    def __init__(self, message: str, code: str = "CONFIG_ERROR") -> None:
        super().__init__(message, code)


class AlgorithmNotFoundError(ConfigurationError):
    """Algorithm name not registered."""

    def __init__(self, name: str, available_algorithms: list[str] | None = None) -> None:
        self.name = name
        self.available_algorithms = available_algorithms or []

        if available_algorithms:
            msg = f"Algorithm '{name}' not found. Available: {available_algorithms}"
        else:
            msg = f"Algorithm '{name}' not found"

        super().__init__(msg, "ALGORITHM_NOT_FOUND")

    def to_dict(self) -> dict[str, Any]:
        result = super().to_dict()
        if self.available_algorithms:
            result["available_algorithms"] = self.available_algorithms
        return result


class UsageError(GoldfibError):
    """Command-line usage error."""

    def __init__(self, message: str) -> None:
        super().__init__(message, "USAGE_ERROR")
