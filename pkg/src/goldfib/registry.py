"""Algorithm registry - maps names to runners with a uniform calling convention."""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Literal

from pydantic import BaseModel

from goldfib import fastfib, sequences
from goldfib.counters import OpCount
from goldfib.errors import AlgorithmNotFoundError, ConfigurationError
from goldfib.numeric import Nat, PrecisionPolicy

logger = logging.getLogger(__name__)

__all__ = ["AlgorithmInfo", "Registry", "default_registry"]

AlgorithmKind = Literal["integer", "real"]

# (n, counter, width_bits, policy) -> value
Runner = Callable[[int, OpCount, int | None, PrecisionPolicy], Nat]


class AlgorithmInfo(BaseModel):
    """Registered algorithm metadata."""

    name: str
    kind: AlgorithmKind
    sequence: Literal["fibonacci", "lucas"] = "fibonacci"
    domain: Literal["all", "pow2"] = "all"
    summary: str

    def describe(self) -> str:
        """One-line description."""
        tag = "int" if self.kind == "integer" else "real"
        return f"{self.name} [{tag}, {self.sequence}]: {self.summary}"


class Registry:
    """Registry of sequence algorithms.

    Integer algorithms take an optional checked width; real algorithms take a
    precision policy. Passing the other is a configuration error.
    """

    def __init__(self) -> None:
        self._infos: dict[str, AlgorithmInfo] = {}
        self._runners: dict[str, Runner] = {}

    def register(self, info: AlgorithmInfo, runner: Runner) -> None:
        if info.name in self._infos:
            raise ConfigurationError(f"Algorithm '{info.name}' registered twice")
        self._infos[info.name] = info
        self._runners[info.name] = runner

    def _key(self, name: str) -> str:
        key = name.removeprefix("fib_")
        if key not in self._infos:
            raise AlgorithmNotFoundError(name, self.list_names())
        return key

    def get(self, name: str) -> AlgorithmInfo:
        """Look up an algorithm; a leading ``fib_`` is ignored."""
        return self._infos[self._key(name)]

    def list_names(self) -> list[str]:
        return sorted(self._infos)

    def list_algorithms(self, kind: AlgorithmKind | None = None) -> list[AlgorithmInfo]:
        return [
            info
            for _, info in sorted(self._infos.items())
            if kind is None or info.kind == kind
        ]

    def run(
        self,
        name: str,
        n: int,
        counter: OpCount | None = None,
        *,
        width_bits: int | None = None,
        policy: PrecisionPolicy | None = None,
    ) -> Nat:
        """Run an algorithm at index n."""
        key = self._key(name)
        info = self._infos[key]
        if info.kind == "integer" and policy is not None and not policy.is_exact:
            raise ConfigurationError(
                f"Algorithm '{key}' is exact integer arithmetic; precision policy "
                f"'{policy.name}' does not apply"
            )
        if info.kind == "real" and width_bits is not None:
            raise ConfigurationError(
                f"Algorithm '{key}' uses real arithmetic; checked widths do not apply"
            )
        ops = counter if counter is not None else OpCount()
        return self._runners[key](n, ops, width_bits, policy or PrecisionPolicy.adaptive())

    def describe(self) -> str:
        """Compact listing, one algorithm per line."""
        lines = ["Available algorithms:"]
        for info in self.list_algorithms():
            lines.append(f"  - {info.describe()}")
        return "\n".join(lines)


def default_registry() -> Registry:
    """Registry holding every algorithm in the toolkit."""
    registry = Registry()

    registry.register(
        AlgorithmInfo(name="linear", kind="integer", summary="n - 1 additions"),
        lambda n, ops, width, _: sequences.fib_linear(n, ops, width_bits=width),
    )
    registry.register(
        AlgorithmInfo(
            name="alternate",
            kind="integer",
            summary="four adjacent terms, two multiplications per bit",
        ),
        lambda n, ops, width, _: fastfib.fib_alternate(n, ops, width_bits=width),
    )
    registry.register(
        AlgorithmInfo(
            name="threesquare",
            kind="integer",
            summary="three adjacent terms, three squarings per bit",
        ),
        lambda n, ops, width, _: fastfib.fib_threesquare(n, ops, width_bits=width),
    )
    registry.register(
        AlgorithmInfo(
            name="takahashi",
            kind="integer",
            summary="Fibonacci/Lucas pair, two squarings per bit",
        ),
        lambda n, ops, width, _: fastfib.fib_takahashi(n, ops, width_bits=width),
    )
    registry.register(
        AlgorithmInfo(name="golden", kind="real", summary="iterative phi power, then round"),
        lambda n, ops, _, policy: fastfib.fib_golden(n, policy, ops),
    )
    registry.register(
        AlgorithmInfo(name="rgolden", kind="real", summary="recursive phi power, then round"),
        lambda n, ops, _, policy: fastfib.fib_rgolden(n, policy, ops),
    )
    registry.register(
        AlgorithmInfo(
            name="binet",
            kind="real",
            domain="pow2",
            summary="ceil(F(n/2)^2 * sqrt5), powers of two only",
        ),
        lambda n, ops, _, policy: fastfib.fib_binet_pow2(n, counter=ops, policy=policy),
    )
    registry.register(
        AlgorithmInfo(
            name="lucas_linear",
            kind="integer",
            sequence="lucas",
            summary="n - 1 additions from (2, 1)",
        ),
        lambda n, ops, width, _: sequences.lucas_linear(n, ops, width_bits=width),
    )
    registry.register(
        AlgorithmInfo(
            name="lucas_golden",
            kind="real",
            sequence="lucas",
            summary="round(phi^n) by the iterative power",
        ),
        lambda n, ops, _, policy: fastfib.lucas_golden(n, policy, ops),
    )
    registry.register(
        AlgorithmInfo(
            name="lucas_rgolden",
            kind="real",
            sequence="lucas",
            summary="round(phi^n) by the recursive power",
        ),
        lambda n, ops, _, policy: fastfib.lucas_rgolden(n, policy, ops),
    )

    logger.debug(f"Registered {len(registry.list_names())} algorithm(s)")
    return registry
