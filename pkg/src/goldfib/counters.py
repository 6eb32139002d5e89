"""Operation counters - the cost-model instrument shared by every algorithm."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["OpCount"]


@dataclass(slots=True)
class OpCount:
    """Multiplication, squaring, addition and iteration counters.

    Squarings are counted apart from general multiplications (the S(n) versus M(n)
    distinction); subtractions count as additions. A counter belongs to one call.
    """

    mults: int = 0
    squares: int = 0
    adds: int = 0
    iters: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "mults": self.mults,
            "squares": self.squares,
            "adds": self.adds,
            "iters": self.iters,
        }
