"""goldfib - Fibonacci and Lucas numbers in O(lg n), with capacity and timing tools."""

from __future__ import annotations

from goldfib.bench import BenchRecord, BenchRow, emit_records, parse_records, run_bench
from goldfib.capacity import (
    CapacityEstimate,
    ProbeMode,
    ProbeResult,
    Table1Row,
    estimate_bits,
    estimate_max_index,
    probe_max_index,
    table1,
)
from goldfib.config import ToolkitConfig, load_config
from goldfib.counters import OpCount
from goldfib.errors import (
    AlgorithmNotFoundError,
    CheckedOverflowError,
    ConfigurationError,
    DomainError,
    GoldfibError,
    UsageError,
)
from goldfib.fastfib import (
    FastQuad,
    fib_alternate,
    fib_binet_pow2,
    fib_golden,
    fib_golden_native,
    fib_rgolden,
    fib_takahashi,
    fib_threesquare,
    lucas_golden,
    lucas_rgolden,
    pow_phi,
)
from goldfib.numeric import (
    BigReal,
    CheckedInt,
    Nat,
    PrecisionPolicy,
    make_phi,
    make_sqrt5,
    round_to_nat,
)
from goldfib.registry import AlgorithmInfo, Registry, default_registry
from goldfib.sequences import (
    SeqParams,
    fib_linear,
    general_linear,
    general_via_fib,
    lucas_linear,
)
from goldfib.verify import VerifyReport, run_verify

__all__ = [
    # Numeric
    "Nat",
    "CheckedInt",
    "BigReal",
    "PrecisionPolicy",
    "make_phi",
    "make_sqrt5",
    "round_to_nat",
    "OpCount",
    # Sequences
    "SeqParams",
    "fib_linear",
    "lucas_linear",
    "general_linear",
    "general_via_fib",
    # Fast algorithms
    "FastQuad",
    "pow_phi",
    "fib_golden",
    "fib_rgolden",
    "fib_golden_native",
    "lucas_golden",
    "lucas_rgolden",
    "fib_alternate",
    "fib_threesquare",
    "fib_takahashi",
    "fib_binet_pow2",
    # Registry
    "AlgorithmInfo",
    "Registry",
    "default_registry",
    # Capacity
    "CapacityEstimate",
    "ProbeMode",
    "ProbeResult",
    "Table1Row",
    "estimate_bits",
    "estimate_max_index",
    "probe_max_index",
    "table1",
    # Bench
    "BenchRecord",
    "BenchRow",
    "run_bench",
    "emit_records",
    "parse_records",
    # Verify
    "VerifyReport",
    "run_verify",
    # Config
    "ToolkitConfig",
    "load_config",
    # Errors
    "GoldfibError",
    "DomainError",
    "CheckedOverflowError",
    "ConfigurationError",
    "AlgorithmNotFoundError",
    "UsageError",
]
