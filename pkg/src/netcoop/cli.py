"""Command-line front end.

    netcoop analyze [--config PATH] [--out PATH] [--json]
    netcoop sweep   [--var cell_distance|inter_user_distance] [--start M] [--stop M]
                    [--points N] [--log] ...
    netcoop verify  [--trials N] [--seed S] [--workers W] ...

Exit codes: 0 success, 1 usage or config error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import sys

from netcoop.config import ConfigError, load_config
from netcoop.experiments import (
    DEFAULT_RANGES,
    SWEEP_VARIABLES,
    SchemeResult,
    SweepRow,
    SweepSpec,
    VerifyRow,
    run_analyze,
    run_sweep,
    run_verify,
    verification_passed,
)
from netcoop.monte_carlo import TrialPlan
from netcoop.output import write_csv, write_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value scenario file (defaults if omitted)")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of CSV")

    ap = _Parser(prog="netcoop", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("analyze", parents=[common], help="powers and bits/J of all three schemes")

    sw = sub.add_parser("sweep", parents=[common], help="bits/J versus a link distance")
    sw.add_argument("--var", choices=SWEEP_VARIABLES, default="cell_distance")
    sw.add_argument("--start", type=float, help="first distance in m")
    sw.add_argument("--stop", type=float, help="last distance in m")
    sw.add_argument("--points", type=int, default=50)
    sw.add_argument("--log", action="store_true", help="log-spaced grid")

    ve = sub.add_parser("verify", parents=[common], help="closed forms vs Monte Carlo")
    ve.add_argument("--trials", type=int, default=10_000_000)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--workers", type=int, default=1, help="threads for the simulation")
    ve.add_argument("--chunk-size", type=int, default=1 << 20)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    emit = write_json if args.json else write_csv
    try:
        cfg = load_config(args.config)
        if args.command == "analyze":
            emit(run_analyze(cfg), args.out, SchemeResult.columns)
            return EXIT_OK
        if args.command == "sweep":
            lo, hi = DEFAULT_RANGES[args.var]
            sweep = SweepSpec(args.var,
                             lo if args.start is None else args.start,
                             hi if args.stop is None else args.stop,
                             args.points, "log" if args.log else "linear")
            emit(run_sweep(cfg, sweep), args.out, SweepRow.columns)
            return EXIT_OK
        plan = TrialPlan(args.trials, args.seed, args.chunk_size, args.workers)
        rows = run_verify(cfg, plan)
        emit(rows, args.out, VerifyRow.columns)
        return EXIT_OK if verification_passed(rows) else EXIT_VERIFY_FAILED
    except (ConfigError, ValueError, OSError) as exc:
        print(f"netcoop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
