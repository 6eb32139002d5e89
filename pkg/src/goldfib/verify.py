"""Differential and identity suite behind ``goldfib verify``."""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Iterable
from typing import Any

from mpmath.libmp import ifib
from pydantic import BaseModel, Field

from goldfib import fastfib
from goldfib.numeric import Nat, require_index
from goldfib.registry import Registry, default_registry
from goldfib.sequences import SeqParams, general_linear, general_via_fib

logger = logging.getLogger(__name__)

__all__ = ["CheckResult", "VerifyReport", "VerifySettings", "run_verify"]

# Exact Fibonacci methods compared against the oracle at every index
DIFFERENTIAL_ALGORITHMS = ("alternate", "threesquare", "takahashi", "golden", "rgolden")
LUCAS_ALGORITHMS = ("lucas_golden", "lucas_rgolden")
GENERAL_PARAMS = (SeqParams(l0=2, l1=1), SeqParams(l0=3, l1=7), SeqParams(l0=0, l1=5))
GENERAL_MAX_N = 300


class CheckResult(BaseModel):
    """Pass/fail tally of one named check."""

    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if self.first_failure is None:
            self.first_failure = detail()
            logger.warning(f"{self.name}: {self.first_failure}")

    def render(self) -> str:
        status = "ok" if self.ok else "FAIL"
        line = f"{self.name}: {status} ({self.passed} passed, {self.failed} failed)"
        if self.first_failure:
            line += f" first failure: {self.first_failure}"
        return line


class VerifyReport(BaseModel):
    """Every check of one verify run, with totals."""

    max_n: int
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def total_passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def total_failed(self) -> int:
        return sum(c.failed for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.total_failed == 0

    def failing_checks(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    def summary(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return (
            f"{verdict}: {self.total_passed} passed, {self.total_failed} failed "
            f"in {len(self.checks)} checks (max n {self.max_n})"
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "summary": {
                "max_n": self.max_n,
                "checks": len(self.checks),
                "passed": self.total_passed,
                "failed": self.total_failed,
            },
            "checks": {
                c.name: {
                    "passed": c.passed,
                    "failed": c.failed,
                    "first_failure": c.first_failure,
                }
                for c in self.checks
            },
        }


class VerifySettings(BaseModel):
    """Sampling knobs; defaults match ToolkitConfig."""

    random_samples: int = Field(default=64, ge=0)
    random_max: int = Field(default=100_000, ge=0)
    seed: int = 1202


def _table(first: int, second: int, count: int) -> list[Nat]:
    values = [first, second]
    while len(values) < count:
        values.append(values[-1] + values[-2])
    return values[:count]


def _random_indices(max_n: int, settings: VerifySettings) -> list[int]:
    if settings.random_max <= max_n:
        return []
    rng = random.Random(settings.seed)
    return sorted(
        rng.randint(max_n + 1, settings.random_max) for _ in range(settings.random_samples)
    )


def _differential(
    registry: Registry,
    name: str,
    dense: list[Nat],
    sampled: Iterable[int],
) -> CheckResult:
    check = CheckResult(name=f"differential/{name}")
    for n, expected in enumerate(dense):
        got = registry.run(name, n)
        check.record(got == expected, lambda: f"n={n}: got {got}, expected {expected}")
    for n in sampled:
        got, expected = registry.run(name, n), ifib(n)
        check.record(got == expected, lambda: f"n={n}: got {got}, expected {expected}")
    return check


def _cassini(fib: list[Nat], max_n: int) -> CheckResult:
    check = CheckResult(name="identity/cassini")
    for n in range(1, max_n + 1):
        lhs = fib[n - 1] * fib[n + 1] - fib[n] * fib[n]
        check.record(lhs == (-1) ** n, lambda: f"n={n}: F(n-1)F(n+1) - F(n)^2 = {lhs}")
    return check


def _doubling(f: list[Nat], max_n: int) -> CheckResult:
    check = CheckResult(name="identity/doubling")
    for k in range(2, max_n // 2 + 1):
        identities = (
            ("F(2k+1)", f[2 * k + 1], f[k + 1] ** 2 + f[k] ** 2),
            ("F(2k-1)", f[2 * k - 1], f[k] ** 2 + f[k - 1] ** 2),
            ("F(2k)", f[2 * k], f[k] * (f[k + 1] + f[k - 1])),
            ("F(2k-2)", f[2 * k - 2], f[k - 1] * (f[k] + f[k - 2])),
        )
        for label, lhs, rhs in identities:
            check.record(lhs == rhs, lambda: f"k={k}: {label} = {lhs} but identity gives {rhs}")
    return check


def _lucas_bridge(fib: list[Nat], lucas: list[Nat], max_n: int) -> CheckResult:
    check = CheckResult(name="identity/lucas_bridge")
    for n in range(1, max_n + 1):
        rhs = fib[n - 1] + fib[n + 1]
        check.record(lucas[n] == rhs, lambda: f"n={n}: L(n)={lucas[n]}, F(n-1)+F(n+1)={rhs}")
    return check


def _lucas(registry: Registry, name: str, lucas: list[Nat], max_n: int) -> CheckResult:
    check = CheckResult(name=f"lucas/{name}")
    for n in range(max_n + 1):
        got = registry.run(name, n)
        check.record(got == lucas[n], lambda: f"n={n}: got {got}, expected {lucas[n]}")
    return check


def _generalized(max_n: int) -> CheckResult:
    check = CheckResult(name="identity/generalized")
    limit = min(max_n, GENERAL_MAX_N)
    for params in GENERAL_PARAMS:
        direct = _table(params.l0, params.l1, limit + 1)
        for n in range(limit + 1):
            via = general_via_fib(params, n, fastfib.fib_alternate)
            check.record(
                via == direct[n] == general_linear(params, n),
                lambda: f"{params.l0},{params.l1} n={n}: combination {via}, direct {direct[n]}",
            )
    return check


def _binet(max_index: int) -> CheckResult:
    check = CheckResult(name="binet/pow2")
    n = 1
    while n <= max_index:
        got, expected = fastfib.fib_binet_pow2(n), ifib(n)
        check.record(got == expected, lambda: f"n={n}: got {got}, expected {expected}")
        n *= 2
    return check


def run_verify(
    max_n: int,
    settings: VerifySettings | None = None,
    *,
    registry: Registry | None = None,
) -> VerifyReport:
    """Check every fast method against the oracle on [0, max_n] plus random samples.

    Random indices are drawn from (max_n, random_max] with a fixed seed. Identities run
    over the dense range only.
    """
    require_index(max_n, "max_n")
    active = settings if settings is not None else VerifySettings()
    reg = registry if registry is not None else default_registry()
    fib = _table(0, 1, max_n + 2)
    lucas = _table(2, 1, max_n + 1)
    sampled = _random_indices(max_n, active)
    logger.info(f"verify: dense range [0, {max_n}], {len(sampled)} random indices")

    report = VerifyReport(max_n=max_n)
    for name in DIFFERENTIAL_ALGORITHMS:
        report.checks.append(_differential(reg, name, fib[: max_n + 1], sampled))
    report.checks.append(_cassini(fib, max_n))
    report.checks.append(_doubling(fib, max_n))
    report.checks.append(_lucas_bridge(fib, lucas, max_n))
    for name in LUCAS_ALGORITHMS:
        report.checks.append(_lucas(reg, name, lucas, max_n))
    report.checks.append(_generalized(max_n))
    report.checks.append(_binet(max(max_n, *sampled, 1)))

    logger.info(report.summary())
    return report
