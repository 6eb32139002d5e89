"""Capacity analysis: how large an index fits a given number of bits.

``estimate_bits`` and ``estimate_max_index`` evaluate the closed-form estimates with
128-bit logarithms, so floors and ceilings near integers are decided exactly.
``probe_max_index`` measures the real limit of an algorithm under a numeric mode by
walking n = 1, 2, 3, ... against an exact oracle.
"""

from __future__ import annotations

import logging
import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from goldfib.errors import CheckedOverflowError, ConfigurationError, DomainError
from goldfib.numeric import Nat, PrecisionPolicy, lg5, lg_phi
from goldfib.registry import Registry, default_registry
from goldfib.sequences import fib_stream

logger = logging.getLogger(__name__)

__all__ = [
    "CapacityEstimate",
    "ProbeMode",
    "ProbeResult",
    "Table1Row",
    "estimate",
    "estimate_bits",
    "estimate_max_index",
    "probe_max_index",
    "table1",
    "DEFAULT_PROBE_BOUND",
    "TABLE1_HEADER",
]

DEFAULT_PROBE_BOUND = 1_000_000

FailureKind = Literal["overflow", "mismatch", "none"]


class CapacityEstimate(BaseModel):
    """Bit count η and the largest index n̂ estimated to fit in it."""

    model_config = ConfigDict(frozen=True)

    eta: int = Field(ge=1)
    n_hat: int = Field(ge=1)


def estimate_bits(n: int) -> int:
    """η_n = ⌊n·lg φ − ½·lg 5⌋ + 1, the bit length of Fₙ."""
    if n < 1:
        raise DomainError(f"estimate_bits needs n >= 1, got {n}", value=n)
    return math.floor(n * lg_phi() - lg5() / 2) + 1


def estimate_max_index(eta: int) -> int:
    """n̂_max = ⌈(η + ½·lg 5 − 1)/lg φ⌉."""
    if eta < 1:
        raise DomainError(f"estimate_max_index needs eta >= 1, got {eta}", value=eta)
    return math.ceil((eta + lg5() / 2 - 1) / lg_phi())


def estimate(eta: int) -> CapacityEstimate:
    return CapacityEstimate(eta=eta, n_hat=estimate_max_index(eta))


# Probing

_MODE_NAMES = ("i32", "i64", "f64", "f32", "trunc9")


class ProbeMode(BaseModel):
    """A checked integer width, or a float precision policy."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["checked_int", "float"]
    width_bits: Literal[32, 64] | None = None
    policy: PrecisionPolicy | None = None

    @classmethod
    def checked_int(cls, width_bits: Literal[32, 64]) -> ProbeMode:
        return cls(kind="checked_int", width_bits=width_bits)

    @classmethod
    def float_mode(cls, policy: PrecisionPolicy) -> ProbeMode:
        return cls(kind="float", policy=policy)

    @classmethod
    def from_name(cls, name: str, places: int = 9) -> ProbeMode:
        """Parse i32, i64, f64, f32 or trunc9."""
        if name == "i32":
            return cls.checked_int(32)
        if name == "i64":
            return cls.checked_int(64)
        if name == "f64":
            return cls.float_mode(PrecisionPolicy.hardware_double())
        if name == "f32":
            return cls.float_mode(PrecisionPolicy.single_float())
        if name == "trunc9":
            return cls.float_mode(PrecisionPolicy.decimal_truncated(places))
        raise ConfigurationError(f"Unknown probe mode '{name}'. Available: {list(_MODE_NAMES)}")

    @property
    def name(self) -> str:
        if self.kind == "checked_int":
            return f"i{self.width_bits}"
        assert self.policy is not None
        return {
            "hardware_double": "f64",
            "single_float": "f32",
            "decimal_truncated": "trunc9",
        }.get(self.policy.kind, self.policy.name)


class ProbeResult(BaseModel):
    """Last index computed correctly, and how n_max + 1 went wrong."""

    algorithm: str
    mode: str
    n_max: int
    failure_kind: FailureKind
    first_bad_delta: Nat | None = None

    @property
    def reached_bound(self) -> bool:
        return self.failure_kind == "none"


def probe_max_index(
    mode: ProbeMode,
    algorithm: str,
    *,
    bound: int = DEFAULT_PROBE_BOUND,
    registry: Registry | None = None,
) -> ProbeResult:
    """Run ``algorithm`` at n = 1, 2, ... under ``mode`` until it first goes wrong.

    Overflow and mismatch are results, not errors. A mode that never fails stops at
    ``bound`` with failure_kind "none".
    """
    reg = registry if registry is not None else default_registry()
    info = reg.get(algorithm)
    wanted = "integer" if mode.kind == "checked_int" else "real"
    if info.kind != wanted or info.domain != "all":
        raise ConfigurationError(
            f"Algorithm '{info.name}' cannot be probed in mode '{mode.name}'"
        )

    oracle = fib_stream(*((0, 1) if info.sequence == "fibonacci" else (2, 1)))
    next(oracle)  # index 0
    logger.info(f"Probing {info.name} in mode {mode.name} up to n={bound}")

    for n in range(1, bound + 1):
        expected = next(oracle)
        try:
            got = reg.run(info.name, n, width_bits=mode.width_bits, policy=mode.policy)
        except CheckedOverflowError as e:
            logger.info(f"{info.name}/{mode.name}: overflow at n={n}: {e.message}")
            return ProbeResult(
                algorithm=info.name, mode=mode.name, n_max=n - 1, failure_kind="overflow"
            )
        except DomainError as e:
            logger.info(f"{info.name}/{mode.name}: invalid result at n={n}: {e.message}")
            return ProbeResult(
                algorithm=info.name, mode=mode.name, n_max=n - 1, failure_kind="mismatch"
            )
        if got != expected:
            delta = abs(got - expected)
            logger.info(f"{info.name}/{mode.name}: mismatch at n={n}, off by {delta}")
            return ProbeResult(
                algorithm=info.name,
                mode=mode.name,
                n_max=n - 1,
                failure_kind="mismatch",
                first_bad_delta=delta,
            )

    return ProbeResult(algorithm=info.name, mode=mode.name, n_max=bound, failure_kind="none")


# Estimate-versus-actual table


class Table1Row(BaseModel):
    """One row: η, storage type, estimated n̂_max, integer and Golden probe results."""

    eta: int
    type_label: str
    n_hat: int
    integer_actual: int | None = None
    golden_actual: int | None = None

    def render(self) -> str:
        def cell(value: int | None) -> str:
            return "na" if value is None else str(value)

        return (
            f"{self.eta:>7}  {self.type_label:<9} {self.n_hat:>7}  "
            f"{cell(self.integer_actual):>4}  {cell(self.golden_actual):>4}"
        )


TABLE1_HEADER = f"{'eta':>7}  {'type':<9} {'n_hat':>7}  {'int':>4}  {'gold':>4}"

# η, label, integer probe mode, golden probe mode
_TABLE1_LAYOUT: tuple[tuple[int, str, str | None, str | None], ...] = (
    (24, "32 float", None, "f32"),
    (31, "32 int", "i32", "trunc9"),
    (53, "64 real", None, "f64"),
    (63, "64 long", "i64", None),
)

_FORWARD_INDEX = 1 << 17


def table1(
    *,
    integer_algorithm: str = "alternate",
    golden_algorithm: str = "golden",
    places: int = 9,
    registry: Registry | None = None,
) -> list[Table1Row]:
    """Estimates beside probed limits, plus the forward η for n = 2^17.

    The 31-bit row's Golden column uses φ and √5 truncated to ``places`` decimals,
    the precision a 31-bit integer carries.
    """
    reg = registry if registry is not None else default_registry()

    def probe(mode_name: str | None, algorithm: str) -> int | None:
        if mode_name is None:
            return None
        mode = ProbeMode.from_name(mode_name, places=places)
        return probe_max_index(mode, algorithm, registry=reg).n_max

    rows = [
        Table1Row(
            eta=eta,
            type_label=label,
            n_hat=estimate_max_index(eta),
            integer_actual=probe(int_mode, integer_algorithm),
            golden_actual=probe(gold_mode, golden_algorithm),
        )
        for eta, label, int_mode, gold_mode in _TABLE1_LAYOUT
    ]
    rows.append(
        Table1Row(eta=estimate_bits(_FORWARD_INDEX), type_label="integer", n_hat=_FORWARD_INDEX)
    )
    return rows

