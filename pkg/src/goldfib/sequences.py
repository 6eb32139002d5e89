"""Linear-time sequence oracles and the generalized recurrence.

Every fast algorithm is tested against these. The iteration keeps two rolling values; it
is the method the benchmarks call ``linear``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator

from pydantic import BaseModel, ConfigDict, Field

from goldfib.counters import OpCount
from goldfib.numeric import CheckedInt, Nat, Word, require_index

__all__ = [
    "SeqParams",
    "FibProvider",
    "fib_linear",
    "lucas_linear",
    "general_linear",
    "general_via_fib",
    "fib_stream",
]

FibProvider = Callable[[int], Nat]


class SeqParams(BaseModel):
    """Initial values 𝓛₀ and 𝓛₁ of a generalized Fibonacci sequence."""

    model_config = ConfigDict(frozen=True)

    l0: int = Field(ge=0)
    l1: int = Field(ge=0)


def _iterate(first: Word, second: Word, n: int, counter: OpCount) -> Word:
    if n == 0:
        return first
    a, b = first, second
    for _ in range(n - 1):
        a, b = b, a + b
        counter.adds += 1
        counter.iters += 1
    return b


def _run(l0: int, l1: int, n: int, counter: OpCount | None, width_bits: int | None) -> Nat:
    require_index(n)
    ops = counter if counter is not None else OpCount()
    if width_bits is None:
        return _iterate(l0, l1, n, ops)
    return int(_iterate(CheckedInt(l0, width_bits), CheckedInt(l1, width_bits), n, ops))


def fib_linear(n: int, counter: OpCount | None = None, *, width_bits: int | None = None) -> Nat:
    """Fₙ by n − 1 additions (F₀ = 0, F₁ = 1)."""
    return _run(0, 1, n, counter, width_bits)


def lucas_linear(n: int, counter: OpCount | None = None, *, width_bits: int | None = None) -> Nat:
    """Lₙ by iteration (L₀ = 2, L₁ = 1)."""
    return _run(2, 1, n, counter, width_bits)


def general_linear(
    params: SeqParams,
    n: int,
    counter: OpCount | None = None,
    *,
    width_bits: int | None = None,
) -> Nat:
    """𝓛ₙ by direct iteration from (𝓛₀, 𝓛₁)."""
    return _run(params.l0, params.l1, n, counter, width_bits)


def general_via_fib(
    params: SeqParams,
    n: int,
    fib: FibProvider = fib_linear,
    *,
    width_bits: int | None = None,
) -> Nat:
    """𝓛ₙ = 𝓛₁·Fₙ + 𝓛₀·Fₙ₋₁ using any exact Fibonacci provider.

    F₋₁ is outside the toolkit's domain, so n = 0 returns 𝓛₀ directly. With
    ``width_bits`` the combination itself is overflow-checked as well.
    """
    require_index(n)
    if n == 0:
        return params.l0
    fn, fn_1 = fib(n), fib(n - 1)
    if width_bits is None:
        return params.l1 * fn + params.l0 * fn_1
    l1 = CheckedInt(params.l1, width_bits)
    l0 = CheckedInt(params.l0, width_bits)
    return int(l1 * CheckedInt(fn, width_bits) + l0 * CheckedInt(fn_1, width_bits))


def fib_stream(first: int = 0, second: int = 1) -> Iterator[Nat]:
    """Terms of the recurrence from (first, second) without end; F₀, F₁, … by default."""
    a, b = first, second
    while True:
        yield a
        a, b = b, a + b
