"""Numeric substrate: exact naturals, checked fixed-width integers, explicit-precision reals.

Three value kinds back every algorithm in the toolkit:

- ``Nat`` is Python's ``int`` restricted to nonnegative values. Arbitrary precision
  integer arithmetic is delegated to the interpreter.
- ``CheckedInt`` is a signed 32- or 64-bit integer whose operations raise
  ``CheckedOverflowError`` instead of wrapping.
- ``BigReal`` is a binary floating value with an explicit precision in bits. Arithmetic
  goes through ``mpmath.libmp`` with round-to-nearest, ties-to-even, so 53 bits agrees
  with IEEE doubles and 24 bits with IEEE singles.

The irrational constants are computed from integer square roots, so their rounding can be
audited without trusting any transcendental routine.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Literal, TypeVar

from mpmath.libmp import (
    from_int,
    from_man_exp,
    from_rational,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_ln2,
    mpf_log,
    mpf_mul,
    mpf_pos,
    mpf_sub,
    round_nearest,
    to_float,
)
from pydantic import BaseModel, ConfigDict, Field

from goldfib.errors import CheckedOverflowError, ConfigurationError, DomainError

logger = logging.getLogger(__name__)

__all__ = [
    "Nat",
    "Word",
    "CheckedInt",
    "BigReal",
    "PrecisionPolicy",
    "require_index",
    "make_sqrt5",
    "make_phi",
    "round_to_nat",
    "truncated_phi",
    "truncated_sqrt5",
    "lg_phi",
    "lg5",
    "phi_power_bits",
]

Nat = int

HARDWARE_DOUBLE_BITS = 53
SINGLE_FLOAT_BITS = 24
CONSTANT_LOG_BITS = 128


def require_index(n: int, name: str = "n") -> None:
    """Reject negative indices; the toolkit never extends sequences below zero."""
    if n < 0:
        raise DomainError(f"{name} must be a nonnegative index, got {n}", value=n)


# Checked fixed-width integers


@dataclass(frozen=True, slots=True, eq=False)
class CheckedInt:
    """Signed two's-complement integer of 32 or 64 bits with overflow detection.

    ``eta`` (width minus the sign bit) is the number of magnitude bits a Fibonacci value
    may occupy. Mixed arithmetic with plain ``int`` operands is allowed; the plain operand
    must itself fit the width.
    """

    value: int
    width_bits: int = 64

    def __post_init__(self) -> None:
        if self.width_bits not in (32, 64):
            raise ConfigurationError(f"CheckedInt width must be 32 or 64, got {self.width_bits}")
        if not self.min_value <= self.value <= self.max_value:
            raise CheckedOverflowError("load", (self.value,), self.width_bits)

    @property
    def eta(self) -> int:
        return self.width_bits - 1

    @property
    def min_value(self) -> int:
        return -(1 << (self.width_bits - 1))

    @property
    def max_value(self) -> int:
        return (1 << (self.width_bits - 1)) - 1

    def _operand(self, other: CheckedInt | int) -> int:
        if isinstance(other, CheckedInt):
            if other.width_bits != self.width_bits:
                raise ConfigurationError(
                    f"Cannot mix {self.width_bits}-bit and {other.width_bits}-bit operands"
                )
            return other.value
        if not self.min_value <= other <= self.max_value:
            raise CheckedOverflowError("load", (other,), self.width_bits)
        return other

    def _result(self, op: str, result: int, *operands: int) -> CheckedInt:
        if not self.min_value <= result <= self.max_value:
            raise CheckedOverflowError(op, operands, self.width_bits)
        return CheckedInt(result, self.width_bits)

    def __add__(self, other: CheckedInt | int) -> CheckedInt:
        rhs = self._operand(other)
        return self._result("add", self.value + rhs, self.value, rhs)

    def __radd__(self, other: int) -> CheckedInt:
        lhs = self._operand(other)
        return self._result("add", lhs + self.value, lhs, self.value)

    def __sub__(self, other: CheckedInt | int) -> CheckedInt:
        rhs = self._operand(other)
        return self._result("sub", self.value - rhs, self.value, rhs)

    def __rsub__(self, other: int) -> CheckedInt:
        lhs = self._operand(other)
        return self._result("sub", lhs - self.value, lhs, self.value)

    def __mul__(self, other: CheckedInt | int) -> CheckedInt:
        rhs = self._operand(other)
        return self._result("mul", self.value * rhs, self.value, rhs)

    def __rmul__(self, other: int) -> CheckedInt:
        lhs = self._operand(other)
        return self._result("mul", lhs * self.value, lhs, self.value)

    def __neg__(self) -> CheckedInt:
        return self._result("neg", -self.value, self.value)

    def __floordiv__(self, other: CheckedInt | int) -> CheckedInt:
        rhs = self._operand(other)
        if rhs == 0:
            raise DomainError("CheckedInt division by zero")
        # MIN // -1 is the only quotient that leaves the range
        return self._result("div", self.value // rhs, self.value, rhs)

    def __mod__(self, other: CheckedInt | int) -> CheckedInt:
        rhs = self._operand(other)
        if rhs == 0:
            raise DomainError("CheckedInt modulo by zero")
        return CheckedInt(self.value % rhs, self.width_bits)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CheckedInt):
            return self.value == other.value and self.width_bits == other.width_bits
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.width_bits))

    def __lt__(self, other: CheckedInt | int) -> bool:
        return self.value < int(other)

    def __le__(self, other: CheckedInt | int) -> bool:
        return self.value <= int(other)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"CheckedInt({self.value}, width_bits={self.width_bits})"


# Integer algorithms are written once over this constrained type variable and run either
# on exact naturals or on checked words.
Word = TypeVar("Word", int, CheckedInt)


# Explicit-precision reals


@dataclass(frozen=True, slots=True, eq=False)
class BigReal:
    """Binary floating value rounded to ``precision_bits`` (round-to-nearest, ties-to-even).

    ``mpf`` is an ``mpmath.libmp`` raw tuple ``(sign, man, exp, bc)``. Binary operations
    round to the larger precision of the two operands.
    """

    mpf: tuple[int, int, int, int] = field(repr=False)
    precision_bits: int

    @classmethod
    def from_int(cls, value: int, precision_bits: int) -> BigReal:
        _check_precision(precision_bits)
        return cls(from_int(value, precision_bits, round_nearest), precision_bits)

    @classmethod
    def from_fraction(cls, value: Fraction, precision_bits: int) -> BigReal:
        _check_precision(precision_bits)
        mpf = from_rational(value.numerator, value.denominator, precision_bits, round_nearest)
        return cls(mpf, precision_bits)

    @classmethod
    def from_float(cls, value: float, precision_bits: int = HARDWARE_DOUBLE_BITS) -> BigReal:
        return cls.from_fraction(Fraction(value), precision_bits)

    @classmethod
    def from_man_exp(cls, man: int, exp: int, precision_bits: int) -> BigReal:
        _check_precision(precision_bits)
        return cls(from_man_exp(man, exp, precision_bits, round_nearest), precision_bits)

    def _prec(self, other: BigReal) -> int:
        return max(self.precision_bits, other.precision_bits)

    def __add__(self, other: BigReal) -> BigReal:
        prec = self._prec(other)
        return BigReal(mpf_add(self.mpf, other.mpf, prec, round_nearest), prec)

    def __sub__(self, other: BigReal) -> BigReal:
        prec = self._prec(other)
        return BigReal(mpf_sub(self.mpf, other.mpf, prec, round_nearest), prec)

    def __mul__(self, other: BigReal) -> BigReal:
        prec = self._prec(other)
        return BigReal(mpf_mul(self.mpf, other.mpf, prec, round_nearest), prec)

    def __truediv__(self, other: BigReal) -> BigReal:
        prec = self._prec(other)
        return BigReal(mpf_div(self.mpf, other.mpf, prec, round_nearest), prec)

    def square(self) -> BigReal:
        prec = self.precision_bits
        return BigReal(mpf_mul(self.mpf, self.mpf, prec, round_nearest), prec)

    def rounded(self, precision_bits: int) -> BigReal:
        """Re-round to another precision."""
        _check_precision(precision_bits)
        return BigReal(mpf_pos(self.mpf, precision_bits, round_nearest), precision_bits)

    def to_fraction(self) -> Fraction:
        """Exact rational value."""
        sign, man, exp, _ = self.mpf
        man = int(man)
        if sign:
            man = -man
        if exp >= 0:
            return Fraction(man << exp)
        return Fraction(man, 1 << -exp)

    def ceil(self) -> int:
        return math.ceil(self.to_fraction())

    def __float__(self) -> float:
        return float(to_float(self.mpf))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BigReal):
            return NotImplemented
        return mpf_cmp(self.mpf, other.mpf) == 0

    def __lt__(self, other: BigReal) -> bool:
        return bool(mpf_cmp(self.mpf, other.mpf) < 0)

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __repr__(self) -> str:
        return f"BigReal({float(self)!r}, precision_bits={self.precision_bits})"


def _check_precision(precision_bits: int) -> None:
    if precision_bits < 2:
        raise ConfigurationError(f"precision_bits must be at least 2, got {precision_bits}")


@lru_cache(maxsize=256)
def make_sqrt5(precision_bits: int) -> BigReal:
    """√5 correctly rounded to ``precision_bits``.

    √5 lies in [2, 4), so its rounded significand is round(√5 · 2^(p−2)) with exactly p
    bits. The floor comes from ``isqrt(5 · 4^(p−2))``; √5 is irrational so there is no
    tie, and the round-up test ``5 · 4^(p−2) > r² + r`` is exact.
    """
    _check_precision(precision_bits)
    scale = precision_bits - 2
    radicand = 5 << (2 * scale)
    root = math.isqrt(radicand)
    if radicand > root * root + root:
        root += 1
    return BigReal.from_man_exp(root, -scale, precision_bits)


@lru_cache(maxsize=256)
def make_phi(precision_bits: int) -> BigReal:
    """φ = (1 + √5)/2 correctly rounded to ``precision_bits``.

    φ lies in [1, 2), so the significand is round((2^(p−1) + √(5·4^(p−1)))/2). For an
    integer a and irrational s, ⌊(a + s)/2⌋ = ⌊(a + ⌊s⌋)/2⌋, which gives the nearest
    integer without ever forming s.
    """
    _check_precision(precision_bits)
    scale = precision_bits - 1
    root = math.isqrt(5 << (2 * scale))
    man = ((1 << scale) + 1 + root) // 2
    return BigReal.from_man_exp(man, -scale, precision_bits)


def round_to_nat(x: BigReal) -> Nat:
    """Nearest integer to x, evaluated exactly; halves round up (2.5 gives 3)."""
    result = math.floor(x.to_fraction() + Fraction(1, 2))
    if result < 0:
        raise DomainError(f"rounding {float(x)!r} gives a negative result", value=result)
    return result


def truncated_phi(places: int) -> Fraction:
    """φ truncated (toward zero) after ``places`` decimal digits."""
    scale = 10**places
    # ⌊(scale + √(5·scale²))/2⌋ = ⌊(scale + ⌊√(5·scale²)⌋)/2⌋
    return Fraction((scale + math.isqrt(5 * scale * scale)) // 2, scale)


def truncated_sqrt5(places: int) -> Fraction:
    """√5 truncated (toward zero) after ``places`` decimal digits."""
    scale = 10**places
    return Fraction(math.isqrt(5 * scale * scale), scale)


def _lg(mpf: tuple[int, int, int, int]) -> Fraction:
    wp = CONSTANT_LOG_BITS + 16
    log_e = mpf_log(mpf, wp, round_nearest)
    quotient = mpf_div(log_e, mpf_ln2(wp, round_nearest), CONSTANT_LOG_BITS, round_nearest)
    return BigReal(quotient, CONSTANT_LOG_BITS).to_fraction()


@lru_cache(maxsize=1)
def lg_phi() -> Fraction:
    """lg φ to 128 bits."""
    return _lg(make_phi(CONSTANT_LOG_BITS + 16).mpf)


@lru_cache(maxsize=1)
def lg5() -> Fraction:
    """lg 5 to 128 bits."""
    return _lg(from_int(5))


def phi_power_bits(n: int) -> int:
    """⌈n · lg φ⌉, the integer-part width of φⁿ."""
    return math.ceil(n * lg_phi())


# Precision policies

PolicyKind = Literal["adaptive", "hardware_double", "single_float", "decimal_truncated"]

_POLICY_NAMES: dict[str, PolicyKind] = {
    "adaptive": "adaptive",
    "double": "hardware_double",
    "single": "single_float",
    "trunc9": "decimal_truncated",
}


class PrecisionPolicy(BaseModel):
    """How φ-power algorithms choose precision and constants.

    - adaptive: ⌈n·lg φ⌉ + guard_bits, exact for every n.
    - hardware_double / single_float: 53 / 24 bits with correctly rounded constants.
    - decimal_truncated: 53-bit arithmetic on φ and √5 truncated after ``places`` decimals.
    """

    model_config = ConfigDict(frozen=True)

    kind: PolicyKind = "adaptive"
    guard_bits: int = Field(default=64, ge=0)
    places: int = Field(default=9, ge=1)

    @classmethod
    def adaptive(cls, guard_bits: int = 64) -> PrecisionPolicy:
        return cls(kind="adaptive", guard_bits=guard_bits)

    @classmethod
    def hardware_double(cls) -> PrecisionPolicy:
        return cls(kind="hardware_double")

    @classmethod
    def single_float(cls) -> PrecisionPolicy:
        return cls(kind="single_float")

    @classmethod
    def decimal_truncated(cls, places: int = 9) -> PrecisionPolicy:
        return cls(kind="decimal_truncated", places=places)

    @classmethod
    def from_name(cls, name: str, guard_bits: int = 64, places: int = 9) -> PrecisionPolicy:
        """Parse a cli spelling: adaptive, double, single or trunc9."""
        kind = _POLICY_NAMES.get(name)
        if kind is None:
            raise ConfigurationError(
                f"Unknown precision policy '{name}'. Available: {sorted(_POLICY_NAMES)}"
            )
        return cls(kind=kind, guard_bits=guard_bits, places=places)

    @property
    def name(self) -> str:
        for name, kind in _POLICY_NAMES.items():
            if kind == self.kind:
                return name
        return self.kind

    @property
    def is_exact(self) -> bool:
        return self.kind == "adaptive"

    @property
    def mantissa_bits(self) -> int | None:
        """Fixed working precision, or None for adaptive."""
        if self.kind == "single_float":
            return SINGLE_FLOAT_BITS
        if self.kind in ("hardware_double", "decimal_truncated"):
            return HARDWARE_DOUBLE_BITS
        return None

    def precision_for(self, n: int) -> int:
        """Working precision for target index n."""
        fixed = self.mantissa_bits
        if fixed is not None:
            return fixed
        precision = phi_power_bits(n) + self.guard_bits
        logger.debug(f"adaptive precision for n={n}: {precision} bits")
        return max(precision, 2)

    def phi(self, precision_bits: int) -> BigReal:
        if self.kind == "decimal_truncated":
            return BigReal.from_fraction(truncated_phi(self.places), precision_bits)
        return make_phi(precision_bits)

    def sqrt5(self, precision_bits: int) -> BigReal:
        if self.kind == "decimal_truncated":
            return BigReal.from_fraction(truncated_sqrt5(self.places), precision_bits)
        return make_sqrt5(precision_bits)
