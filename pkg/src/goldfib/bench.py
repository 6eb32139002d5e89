"""Timing and operation-count harness.

Timed runs happen one at a time on a monotonic nanosecond clock, after unrecorded
warmup runs. A record keeps the median and the minimum of the timed runs, plus the
operation counts from a single instrumented run.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import statistics
import time
from typing import Any, Literal

import toons
from pydantic import BaseModel, Field

from goldfib.capacity import ProbeMode
from goldfib.counters import OpCount
from goldfib.errors import ConfigurationError
from goldfib.registry import Registry, default_registry

logger = logging.getLogger(__name__)

__all__ = [
    "BenchRecord",
    "BenchRow",
    "RecordFormat",
    "CSV_FIELDS",
    "run_bench",
    "emit_records",
    "parse_records",
]

RecordFormat = Literal["csv", "jsonl", "toon"]

CSV_FIELDS = (
    "algorithm",
    "n",
    "mode",
    "reps",
    "median_ns",
    "min_ns",
    "mults",
    "squares",
    "adds",
    "iters",
)

MIN_REPS = 3
MIN_WARMUP = 1


class BenchRecord(BaseModel):
    """Timings and operation counts of one (algorithm, n, mode) measurement."""

    algorithm: str
    n: int = Field(ge=0)
    mode: str = "exact"
    reps: int
    warmup_reps: int
    median_ns: int
    min_ns: int = Field(gt=0)
    ops: OpCount

    def to_row(self) -> BenchRow:
        return BenchRow(
            algorithm=self.algorithm,
            n=self.n,
            mode=self.mode,
            reps=self.reps,
            median_ns=self.median_ns,
            min_ns=self.min_ns,
            **self.ops.as_dict(),
        )


class BenchRow(BaseModel):
    """Flat form of a record, as written to csv, json-lines or toon."""

    algorithm: str
    n: int
    mode: str
    reps: int
    median_ns: int
    min_ns: int
    mults: int
    squares: int
    adds: int
    iters: int


def run_bench(
    algorithm: str,
    n: int,
    reps: int = 11,
    warmup: int = 2,
    *,
    mode: ProbeMode | None = None,
    registry: Registry | None = None,
) -> BenchRecord:
    """Time ``algorithm`` at index n.

    Raises:
        ConfigurationError: reps < 3, warmup < 1, or an unknown algorithm
        CheckedOverflowError: the checked mode cannot hold F_n
    """
    if reps < MIN_REPS:
        raise ConfigurationError(f"reps must be >= {MIN_REPS}, got {reps}")
    if warmup < MIN_WARMUP:
        raise ConfigurationError(f"warmup must be >= {MIN_WARMUP}, got {warmup}")

    reg = registry if registry is not None else default_registry()
    info = reg.get(algorithm)
    width = mode.width_bits if mode is not None else None
    policy = mode.policy if mode is not None else None

    ops = OpCount()
    reg.run(info.name, n, ops, width_bits=width, policy=policy)

    for _ in range(warmup):
        reg.run(info.name, n, width_bits=width, policy=policy)

    samples: list[int] = []
    for _ in range(reps):
        start = time.perf_counter_ns()
        reg.run(info.name, n, width_bits=width, policy=policy)
        samples.append(time.perf_counter_ns() - start)

    # the clock can report 0 for sub-resolution runs
    min_ns = max(min(samples), 1)
    median_ns = max(int(statistics.median(samples)), min_ns)

    record = BenchRecord(
        algorithm=info.name,
        n=n,
        mode=mode.name if mode is not None else "exact",
        reps=reps,
        warmup_reps=warmup,
        median_ns=median_ns,
        min_ns=min_ns,
        ops=ops,
    )
    logger.info(
        f"bench {record.algorithm} n={n} mode={record.mode}: "
        f"median={median_ns}ns min={min_ns}ns ops={ops.as_dict()}"
    )
    return record


def emit_records(records: list[BenchRecord], fmt: RecordFormat = "csv") -> str:
    """Serialize records; csv carries the header row first."""
    if not records:
        raise ConfigurationError("No bench records to emit")
    rows = [record.to_row().model_dump() for record in records]

    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()
    if fmt == "jsonl":
        return "".join(json.dumps(row) + "\n" for row in rows)
    if fmt == "toon":
        text: str = toons.dumps({"records": rows})
        return text if text.endswith("\n") else text + "\n"
    raise ConfigurationError(f"Unknown record format '{fmt}'")


def parse_records(text: str, fmt: RecordFormat = "csv") -> list[BenchRow]:
    """Read emitted records back as flat rows."""
    items: list[dict[str, Any]]
    if fmt == "csv":
        items = list(csv.DictReader(io.StringIO(text)))
    elif fmt == "jsonl":
        items = [json.loads(line) for line in text.splitlines() if line.strip()]
    elif fmt == "toon":
        items = list(toons.loads(text)["records"])
    else:
        raise ConfigurationError(f"Unknown record format '{fmt}'")
    return [BenchRow.model_validate(item) for item in items]
