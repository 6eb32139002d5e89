"""O(lg n) Fibonacci and Lucas algorithms, each instrumented with an OpCount.

Real-arithmetic methods raise φ to the n-th power and round (Golden, Rgolden, the
power-of-two Binet recursion). Integer methods double an index with Fibonacci identities:
Alternate carries four adjacent terms and needs two multiplications per step,
three-square carries three terms and squares them, and Takahashi's method carries a
Fibonacci/Lucas pair.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

from goldfib.counters import OpCount
from goldfib.errors import DomainError
from goldfib.numeric import (
    BigReal,
    CheckedInt,
    Nat,
    PrecisionPolicy,
    Word,
    phi_power_bits,
    require_index,
    round_to_nat,
)

logger = logging.getLogger(__name__)

__all__ = [
    "OpCount",
    "PhiPowerState",
    "FastQuad",
    "BitPlan",
    "LucasPairState",
    "pow_phi",
    "fib_golden",
    "fib_rgolden",
    "lucas_golden",
    "lucas_rgolden",
    "fib_alternate",
    "fib_threesquare",
    "fib_takahashi",
    "fib_binet_pow2",
    "pow_phi_native",
    "fib_golden_native",
]

ADAPTIVE = PrecisionPolicy.adaptive()
BINET_GUARD_BITS = 32
_LUCAS_SEEDS = (2, 1)


@dataclass(frozen=True, slots=True)
class PhiPowerState:
    """Golden loop head: ``acc · gi^(i − i mod 2) = φⁿ`` up to rounding."""

    gi: BigReal
    acc: BigReal
    i: int


@dataclass(frozen=True, slots=True)
class FastQuad:
    """(F_{k−2}, F_{k−1}, F_k, F_{k+1}) after an Alternate iteration.

    ``fh`` is None after the final iteration, which never computes F_{n+1}.
    """

    fll: Nat
    fl: Nat
    fm: Nat
    fh: Nat | None
    k: int


@dataclass(frozen=True, slots=True)
class BitPlan:
    """Bits of n below the leading one, most significant first.

    ``mark_odd[j − 1]`` is bit N − j of n for j = 1…N, N = ⌊lg n⌋. This is what the
    markOdd-filling loop produces, read straight off the binary representation.
    """

    mark_odd: tuple[bool, ...]

    @classmethod
    def for_index(cls, n: int) -> BitPlan:
        top = n.bit_length() - 1
        return cls(tuple(bool((n >> (top - j)) & 1) for j in range(1, top + 1)))

    def __len__(self) -> int:
        return len(self.mark_odd)


@dataclass(frozen=True, slots=True)
class LucasPairState:
    """Takahashi state after a loop step: f = F_k, l = L_k, sign = (−1)^k."""

    f: Nat
    l: Nat  # noqa: E741
    sign: int
    mask: int


def _ops(counter: OpCount | None) -> OpCount:
    return counter if counter is not None else OpCount()


# φ-power methods


def pow_phi(
    n: int,
    precision_bits: int,
    counter: OpCount | None = None,
    *,
    phi: BigReal | None = None,
    trace: Callable[[PhiPowerState], None] | None = None,
) -> BigReal:
    """φⁿ by the Golden loop: square the chain, multiply it in at odd halvings.

    Performs ⌊lg n⌋ squarings and popcount(⌊n/2⌋) multiplications. ``phi`` overrides
    the correctly rounded constant (the decimal-truncated policy passes its own).
    """
    require_index(n)
    ops = _ops(counter)
    base = phi if phi is not None else ADAPTIVE.phi(precision_bits)
    gi = base
    acc = base if n & 1 else BigReal.from_int(1, precision_bits)
    i = n
    while i > 1:
        if trace is not None:
            trace(PhiPowerState(gi, acc, i))
        i //= 2
        gi = gi.square()
        ops.squares += 1
        if i & 1:
            acc = gi * acc
            ops.mults += 1
        ops.iters += 1
    return acc


def fib_golden(
    n: int,
    policy: PrecisionPolicy = ADAPTIVE,
    counter: OpCount | None = None,
) -> Nat:
    """Fₙ = round(φⁿ/√5) with φⁿ from the Golden loop.

    Exact under the adaptive policy. The fixed-precision policies return whatever the
    rounding produces, which is what the capacity probe measures.
    """
    require_index(n)
    precision = policy.precision_for(n)
    power = pow_phi(n, precision, counter, phi=policy.phi(precision))
    return round_to_nat(power / policy.sqrt5(precision))


def _rgold(n: int, phi: BigReal, ops: OpCount) -> BigReal:
    ops.iters += 1
    if n == 1:
        return phi
    half = _rgold(n // 2, phi, ops).square()
    ops.squares += 1
    if n & 1:
        ops.mults += 1
        return phi * half
    return half


def fib_rgolden(
    n: int,
    policy: PrecisionPolicy = ADAPTIVE,
    counter: OpCount | None = None,
) -> Nat:
    """Fₙ through the recursive power Rgold(n) = φⁿ; depth ⌊lg n⌋ + 1.

    The rounding step divides Rgold(n), not Rgold(n/2): halving the index there
    returns F_{n/2}-sized values (n = 4 would give 1).
    """
    require_index(n)
    if n <= 1:
        return n
    precision = policy.precision_for(n)
    power = _rgold(n, policy.phi(precision), _ops(counter))
    return round_to_nat(power / policy.sqrt5(precision))


def lucas_golden(
    n: int,
    policy: PrecisionPolicy = ADAPTIVE,
    counter: OpCount | None = None,
) -> Nat:
    """Lₙ = round(φⁿ), valid since |φ̄ⁿ| < 0.5 for n ≥ 2; L₀ and L₁ come from a table."""
    require_index(n)
    if n < 2:
        return _LUCAS_SEEDS[n]
    precision = policy.precision_for(n)
    return round_to_nat(pow_phi(n, precision, counter, phi=policy.phi(precision)))


def lucas_rgolden(
    n: int,
    policy: PrecisionPolicy = ADAPTIVE,
    counter: OpCount | None = None,
) -> Nat:
    """Lₙ = round(Rgold(n)), the recursive twin of lucas_golden."""
    require_index(n)
    if n < 2:
        return _LUCAS_SEEDS[n]
    precision = policy.precision_for(n)
    return round_to_nat(_rgold(n, policy.phi(precision), _ops(counter)))


def pow_phi_native(n: int) -> float:
    """φⁿ by the Golden loop on the platform's own doubles."""
    require_index(n)
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    gi = phi
    acc = phi if n & 1 else 1.0
    i = n
    while i > 1:
        i //= 2
        gi = gi * gi
        if i & 1:
            acc = gi * acc
    return acc


def fib_golden_native(n: int) -> Nat:
    """Golden on native doubles; cross-checks the 53-bit emulation."""
    return max(math.ceil(pow_phi_native(n) / math.sqrt(5.0) - 0.5), 0)


# Integer doubling methods


def _alternate(
    n: int,
    zero: Word,
    one: Word,
    ops: OpCount,
    trace: Callable[[FastQuad], None] | None,
) -> Word:
    plan = BitPlan.for_index(n)
    last = len(plan)
    fll, fl, fm, fh = one, zero, one, one
    k = 1
    for j, odd in enumerate(plan.mark_odd, start=1):
        # k -> 2k
        fll = fl * (fm + fll)
        fm = fm * (fh + fl)
        fl = fm - fll
        ops.mults += 2
        ops.adds += 3
        k *= 2
        if odd:
            # k -> k + 1
            fll, fl = fl, fm
            fm = fl + fll
            ops.adds += 1
            k += 1
        # F_{n+1} is never read
        if j < last:
            fh = fm + fl
            ops.adds += 1
        ops.iters += 1
        if trace is not None:
            trace(FastQuad(int(fll), int(fl), int(fm), int(fh) if j < last else None, k))
    return fm


def fib_alternate(
    n: int,
    counter: OpCount | None = None,
    *,
    width_bits: int | None = None,
    trace: Callable[[FastQuad], None] | None = None,
) -> Nat:
    """Fₙ from four adjacent terms doubled with two multiplications per bit of n.

    F_{2k−2} = F_{k−1}(F_k + F_{k−2}) and F_{2k} = F_k(F_{k+1} + F_{k−1}); the odd
    neighbours follow by subtraction, and a set bit shifts the window one step up.
    """
    require_index(n)
    if n == 0:
        return 0
    ops = _ops(counter)
    if width_bits is None:
        return _alternate(n, 0, 1, ops, trace)
    return int(_alternate(n, CheckedInt(0, width_bits), CheckedInt(1, width_bits), ops, trace))


def _threesquare(n: int, zero: Word, one: Word, ops: OpCount) -> Word:
    a, b, c = zero, one, one
    for odd in BitPlan.for_index(n).mark_odd:
        c2, b2, a2 = c * c, b * b, a * a
        ops.squares += 3
        hi = c2 + b2
        lo = b2 + a2
        a, b, c = lo, hi - lo, hi
        ops.adds += 3
        if odd:
            a, b, c = b, c, b + c
            ops.adds += 1
        ops.iters += 1
    return b


def fib_threesquare(
    n: int,
    counter: OpCount | None = None,
    *,
    width_bits: int | None = None,
) -> Nat:
    """Fₙ from (F_{k−1}, F_k, F_{k+1}) using F_{2k±1} as sums of squares."""
    require_index(n)
    if n == 0:
        return 0
    ops = _ops(counter)
    if width_bits is None:
        return _threesquare(n, 0, 1, ops)
    return int(_threesquare(n, CheckedInt(0, width_bits), CheckedInt(1, width_bits), ops))


def _halve(value: Word) -> Word:
    # f ≡ l (mod 2) for every Fibonacci/Lucas pair
    if value % 2 != 0:
        raise DomainError(f"odd operand {int(value)} in exact halving", value=int(value))
    return value // 2


def _takahashi(
    n: int,
    one: Word,
    ops: OpCount,
    trace: Callable[[LucasPairState], None] | None,
) -> Word:
    f, l = one, one  # noqa: E741
    sign = -1
    steps = n.bit_length() - 2
    mask = 1 << steps
    for _ in range(steps):
        temp = f * f
        f = _halve(f + l)
        f = 2 * (f * f) - 3 * temp - 2 * sign
        l = 5 * temp + 2 * sign  # noqa: E741
        ops.squares += 2
        ops.adds += 4
        sign = 1
        if n & mask:
            temp = f
            f = _halve(f + l)
            l = f + 2 * temp  # noqa: E741
            ops.adds += 2
            sign = -1
        # one mask bit per loop step
        mask >>= 1
        ops.iters += 1
        if trace is not None:
            trace(LucasPairState(int(f), int(l), sign, mask))
    if n & mask == 0:
        f = f * l
        ops.mults += 1
    else:
        f = _halve(f + l)
        f = f * l - sign
        ops.mults += 1
        ops.adds += 2
    return f


def fib_takahashi(
    n: int,
    counter: OpCount | None = None,
    *,
    width_bits: int | None = None,
    trace: Callable[[LucasPairState], None] | None = None,
) -> Nat:
    """Fₙ by the Fibonacci/Lucas product method, two squarings per loop step.

    F₀, F₁, F₂ are explicit, the loop runs ⌊lg n⌋ − 1
    times from (F₁, L₁), and the epilogue forms F_{2k} = F_k·L_k or
    F_{2k+1} = F_{k+1}·L_k − (−1)^k from the last bit.
    """
    require_index(n)
    if n == 0:
        return 0
    if n <= 2:
        return 1
    ops = _ops(counter)
    if width_bits is None:
        return _takahashi(n, 1, ops, trace)
    return int(_takahashi(n, CheckedInt(1, width_bits), ops, trace))


def _binet(n: int, sqrt5: BigReal, precision_bits: int, ops: OpCount) -> Nat:
    ops.iters += 1
    if n <= 2:
        return 1
    half = _binet(n // 2, sqrt5, precision_bits, ops)
    square = half * half
    ops.squares += 1
    product = BigReal.from_int(square, precision_bits) * sqrt5
    ops.mults += 1
    return product.ceil()


def fib_binet_pow2(
    n: int,
    precision_bits: int | None = None,
    counter: OpCount | None = None,
    *,
    policy: PrecisionPolicy | None = None,
    guard_bits: int = BINET_GUARD_BITS,
) -> Nat:
    """F_n = ⌈F_{n/2}² · √5⌉ for n a power of two.

    Elsewhere the recursion is provably inexact (n = 6 yields 21), so other indices are a
    domain error. Precision defaults to ⌈n·lg φ⌉ + guard_bits, or to the policy's.
    """
    require_index(n)
    if n == 0 or n & (n - 1):
        raise DomainError(f"Binet recursion is exact only for powers of two, got n={n}", value=n)
    active = policy if policy is not None else ADAPTIVE
    if precision_bits is None:
        if policy is None:
            precision_bits = phi_power_bits(n) + guard_bits
        else:
            precision_bits = policy.precision_for(n)
    return _binet(n, active.sqrt5(precision_bits), precision_bits, _ops(counter))
