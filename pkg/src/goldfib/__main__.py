"""goldfib command line."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import NoReturn

from pydantic import ValidationError

from goldfib.bench import emit_records, run_bench
from goldfib.capacity import (
    TABLE1_HEADER,
    ProbeMode,
    estimate_bits,
    estimate_max_index,
    probe_max_index,
    table1,
)
from goldfib.config import ToolkitConfig, load_config
from goldfib.errors import (
    CheckedOverflowError,
    ConfigurationError,
    DomainError,
    GoldfibError,
    UsageError,
)
from goldfib.numeric import PrecisionPolicy
from goldfib.registry import Registry, default_registry
from goldfib.sequences import SeqParams, general_via_fib
from goldfib.verify import run_verify

logger = logging.getLogger(__name__)

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY_FAILED = 3

INTEGER_ALGOS = ("linear", "alternate", "threesquare", "takahashi")
COMPUTE_ALGOS = (*INTEGER_ALGOS, "golden", "rgolden", "binet")
POLICIES = ("adaptive", "double", "single", "trunc9")
PROBE_MODES = ("i32", "i64", "f64", "f32", "trunc9")


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as UsageError."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got '{text}'"
        ) from None


def _name_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="goldfib",
        description="Fibonacci and Lucas algorithms, capacity estimates and benchmarks",
    )
    parser.add_argument("--config", type=Path, default=None, help="Path to config JSON")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="More diagnostics (-vv for debug)"
    )
    parser.add_argument(
        "--json-errors", action="store_true", help="Report errors as JSON on stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    compute = sub.add_parser("compute", help="Print F(n)")
    compute.add_argument("--algo", choices=COMPUTE_ALGOS, required=True)
    compute.add_argument("--n", type=int, required=True)
    compute.add_argument("--policy", choices=POLICIES, default=None)
    compute.add_argument("--checked-bits", type=int, choices=(32, 64), default=None)

    lucas = sub.add_parser("lucas", help="Print L(n)")
    lucas.add_argument("--n", type=int, required=True)
    lucas.add_argument("--via", choices=("golden", "rgolden", "linear"), default="golden")
    lucas.add_argument("--policy", choices=POLICIES, default=None)

    general = sub.add_parser("general", help="Print the n-th term from (l0, l1)")
    general.add_argument("--l0", type=int, required=True)
    general.add_argument("--l1", type=int, required=True)
    general.add_argument("--n", type=int, required=True)
    general.add_argument("--algo", choices=INTEGER_ALGOS, default="linear")
    general.add_argument("--checked-bits", type=int, choices=(32, 64), default=None)

    capacity = sub.add_parser("capacity", help="Estimate capacity")
    target = capacity.add_mutually_exclusive_group(required=True)
    target.add_argument("--bits", type=int, help="Print the largest index fitting in BITS")
    target.add_argument("--n", type=int, help="Print the bit length estimated for F(N)")

    probe = sub.add_parser("probe", help="Find the largest index an algorithm gets right")
    probe.add_argument("--mode", choices=PROBE_MODES, required=True)
    probe.add_argument("--algo", required=True)
    probe.add_argument("--bound", type=int, default=None)

    bench = sub.add_parser("bench", help="Time algorithms")
    bench.add_argument("--algos", type=_name_list, required=True)
    bench.add_argument("--n", type=_int_list, required=True)
    bench.add_argument("--reps", type=int, default=None)
    bench.add_argument("--warmup", type=int, default=None)
    bench.add_argument("--mode", choices=PROBE_MODES, default=None)
    bench.add_argument("--format", choices=("csv", "jsonl", "toon"), default="csv")
    bench.add_argument("--out", type=Path, default=None)

    verify = sub.add_parser("verify", help="Run the differential and identity suite")
    verify.add_argument("--max-n", type=int, default=2000)

    sub.add_parser("algos", help="List registered algorithms")
    sub.add_parser("table1", help="Print estimates beside probed limits")
    return parser


def _policy(config: ToolkitConfig, name: str, algorithm: str) -> PrecisionPolicy:
    if name == "adaptive" and algorithm == "binet":
        return PrecisionPolicy.adaptive(config.binet_guard_bits)
    return config.policy(name)


def _cmd_compute(args: argparse.Namespace, config: ToolkitConfig, reg: Registry) -> int:
    info = reg.get(args.algo)
    policy = None
    if info.kind == "real" or args.policy is not None:
        policy = _policy(config, args.policy or "adaptive", info.name)
    print(reg.run(args.algo, args.n, width_bits=args.checked_bits, policy=policy))
    return EXIT_OK


def _cmd_lucas(args: argparse.Namespace, config: ToolkitConfig, reg: Registry) -> int:
    name = f"lucas_{args.via}"
    if args.via == "linear" and args.policy is not None:
        raise ConfigurationError("--policy applies to --via golden or rgolden only")
    policy = None if args.via == "linear" else _policy(config, args.policy or "adaptive", name)
    print(reg.run(name, args.n, policy=policy))
    return EXIT_OK


def _cmd_general(args: argparse.Namespace, config: ToolkitConfig, reg: Registry) -> int:
    try:
        params = SeqParams(l0=args.l0, l1=args.l1)
    except ValidationError as e:
        raise DomainError(f"initial values must be nonnegative: {args.l0}, {args.l1}") from e
    width = args.checked_bits

    def fib(k: int) -> int:
        return reg.run(args.algo, k, width_bits=width)

    print(general_via_fib(params, args.n, fib, width_bits=width))
    return EXIT_OK


def _cmd_capacity(args: argparse.Namespace, config: ToolkitConfig, reg: Registry) -> int:
    if args.bits is not None:
        print(estimate_max_index(args.bits))
    else:
        print(estimate_bits(args.n))
    return EXIT_OK


def _cmd_probe(args: argparse.Namespace, config: ToolkitConfig, reg: Registry) -> int:
    mode = ProbeMode.from_name(args.mode, places=config.decimal_places)
    bound = args.bound if args.bound is not None else config.probe_bound
    result = probe_max_index(mode, args.algo, bound=bound, registry=reg)
    delta = "-" if result.first_bad_delta is None else str(result.first_bad_delta)
    print(f"{result.n_max} {result.failure_kind} {delta}")
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace, config: ToolkitConfig, reg: Registry) -> int:
    reps = args.reps if args.reps is not None else config.bench_reps
    warmup = args.warmup if args.warmup is not None else config.bench_warmup
    mode = ProbeMode.from_name(args.mode, places=config.decimal_places) if args.mode else None
    if not args.algos or not args.n:
        raise ConfigurationError("bench needs at least one algorithm and one index")

    records = [
        run_bench(algo, n, reps, warmup, mode=mode, registry=reg)
        for algo in args.algos
        for n in args.n
    ]
    text = emit_records(records, args.format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
        logger.info(f"Wrote {len(records)} record(s) to {args.out}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, config: ToolkitConfig, reg: Registry) -> int:
    report = run_verify(args.max_n, config.verify_settings(), registry=reg)
    for check in report.checks:
        print(check.render())
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def _cmd_algos(args: argparse.Namespace, config: ToolkitConfig, reg: Registry) -> int:
    print(reg.describe())
    return EXIT_OK


def _cmd_table1(args: argparse.Namespace, config: ToolkitConfig, reg: Registry) -> int:
    print(TABLE1_HEADER)
    for row in table1(places=config.decimal_places, registry=reg):
        print(row.render())
    return EXIT_OK


Command = Callable[[argparse.Namespace, ToolkitConfig, Registry], int]

COMMANDS: dict[str, Command] = {
    "compute": _cmd_compute,
    "lucas": _cmd_lucas,
    "general": _cmd_general,
    "capacity": _cmd_capacity,
    "probe": _cmd_probe,
    "bench": _cmd_bench,
    "verify": _cmd_verify,
    "algos": _cmd_algos,
    "table1": _cmd_table1,
}


def _report(error: GoldfibError, json_errors: bool) -> None:
    if json_errors:
        print(json.dumps(error.to_dict()), file=sys.stderr)
    else:
        print(f"error: {error.message}", file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the cli; returns the exit status."""
    json_errors = "--json-errors" in (argv if argv is not None else sys.argv[1:])
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        _report(e, json_errors)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", force=True)

    try:
        config = load_config(args.config)
        return COMMANDS[args.command](args, config, default_registry())
    except (UsageError, ConfigurationError) as e:
        _report(e, args.json_errors)
        return EXIT_USAGE
    except (DomainError, CheckedOverflowError) as e:
        _report(e, args.json_errors)
        return EXIT_DOMAIN
    except GoldfibError as e:
        _report(e, args.json_errors)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
