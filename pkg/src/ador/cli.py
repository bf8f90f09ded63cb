"""
Command line interface::

    ador run <config.ini>
    ador table <dir>... [--csv table.csv]
    ador sweep <config.ini> --param <key> --values v1,v2,... [--jobs N]
    ador stencil --order p

Exit codes: 0 success, 2 configuration error, 3 numerical blow-up,
4 oracle failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence, Tuple

from ador.config import ConfigError, load_config, override, parse_config
from ador.dsc import SUPPORTED_ORDERS, DscKernel, derivative_weights
from ador.runner import EXIT_CONFIG, EXIT_OK, RunResult, run
from ador.tables import CSV_HEADER, TableError, build_tables

logger = logging.getLogger("ador")


def _error(message: str) -> None:
    print(f"ador: error: {message}", file=sys.stderr)


def _report(result: RunResult, out: Path) -> int:
    if result.exit_code == EXIT_OK:
        print(f"{out}: {result.verdict}, t = {result.final_time:g}")
    else:
        _error(f"{result.verdict}: {result.message}")
    return result.exit_code


def cmd_run(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
        result = run(config)
    except ConfigError as exc:
        _error(f"invalid configuration: {exc}")
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        _error(f"invalid configuration: {exc}")
        return EXIT_CONFIG
    return _report(result, config.output_dir)


def cmd_table(args: argparse.Namespace) -> int:
    try:
        text, rows = build_tables([Path(p) for p in args.dirs])
    except TableError as exc:
        _error(str(exc))
        return EXIT_CONFIG

    sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fd:
            writer = csv.writer(fd, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            writer.writerows(rows)
    return EXIT_OK


def _slug(value: str) -> str:
    return re.sub(r"[^A-Za-z0-9._+-]", "_", value)


def _sweep_one(item: Tuple[str, str, str, str]) -> Tuple[str, str, RunResult]:
    text, base_dir, key, value = item
    config = parse_config(override(text, key, value), base_dir=base_dir)
    name = f"{key.split('.')[-1]}={_slug(value)}"
    config = dataclasses.replace(config, output_dir=config.output_dir / name)
    return value, name, run(config)


SWEEP_HEADER = ["value", "directory", "exit_code", "verdict", "final_time", "max_abs", "l1", "l2", "linf"]


def cmd_sweep(args: argparse.Namespace) -> int:
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    if not values:
        _error("empty value list for --values")
        return EXIT_CONFIG

    path = Path(args.config)
    try:
        text = path.read_text(encoding="utf-8")
        base = parse_config(text)
        # validate every configuration before running any of them
        for v in values:
            parse_config(override(text, args.param, v))
    except OSError as exc:
        _error(f"cannot read {path}: {exc.strerror}")
        return EXIT_CONFIG
    except ConfigError as exc:
        _error(f"invalid configuration: {exc}")
        return EXIT_CONFIG

    items = [(text, ".", args.param, v) for v in values]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, items))
    else:
        results = [_sweep_one(item) for item in items]

    base.output_dir.mkdir(parents=True, exist_ok=True)
    summary = base.output_dir / "sweep_summary.csv"
    with open(summary, "w", encoding="utf-8", newline="") as fd:
        writer = csv.writer(fd, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for value, name, result in results:
            errors = next(iter(result.final_errors.values()), ("", "", ""))
            writer.writerow([
                value, name, result.exit_code, result.verdict,
                repr(result.final_time), repr(result.max_abs),
                *(repr(e) if e != "" else "" for e in errors),
            ])
            print(f"{args.param} = {value}: {result.verdict} (exit {result.exit_code})")

    print(f"summary written to {summary}")
    return EXIT_OK


def cmd_stencil(args: argparse.Namespace) -> int:
    try:
        kernel = DscKernel(
            spacing=args.spacing, sigma_over_delta=args.sigma_over_delta, half_width=args.half_width
        )
        stencil = derivative_weights(args.order, kernel)
    except ValueError as exc:
        _error(str(exc))
        return EXIT_CONFIG

    print("offset,weight")
    for k, w in zip(stencil.offsets, stencil.weights):
        print(f"{k},{w:.17g}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ador", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="integrate one configuration")
    p.add_argument("config")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("table", help="tabulate errors of completed runs")
    p.add_argument("dirs", nargs="*")
    p.add_argument("--csv", help="also write the table as CSV")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", help="run a configuration for several values of one key")
    p.add_argument("config")
    p.add_argument("--param", required=True, help="configuration key, e.g. ador.gamma1")
    p.add_argument("--values", required=True, help="comma separated values")
    p.add_argument("--jobs", type=int, default=1, help="concurrent runs")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stencil", help="print DSC derivative weights")
    p.add_argument("--order", type=int, required=True, choices=SUPPORTED_ORDERS)
    p.add_argument("--spacing", type=float, default=1.0)
    p.add_argument("--sigma-over-delta", type=float, default=3.2)
    p.add_argument("--half-width", type=int, default=31)
    p.set_defaults(func=cmd_stencil)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
