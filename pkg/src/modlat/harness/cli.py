"""Command-line entry point.

Exit codes: 0 success, 2 validation error, 3 cap exhaustion.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from ..errors import CapError, ValidationError
from .config import ExperimentConfig, build_config, read_config_file
from .experiments import run

# subcommand name -> experiment kind
COMMANDS = {
    "split-prime": "split-prime",
    "construct": "construct",
    "first-moment": "first-moment",
    "moments": "moments",
    "svp": "svp",
    "count-rank": "rank-count",
}

_CONFIG_FIELDS = [f.name for f in dataclasses.fields(ExperimentConfig) if f.name != "kind"]


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modlat", description="Module lattices lifted from codes over cyclotomic fields.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="key = value config file; inline flags override it")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        for field in _CONFIG_FIELDS:
            flags = [_flag(field)]
            if field == "primes":
                flags.append("--p")
            if field == "samples":
                flags.append("--M")
            sp.add_argument(*flags, dest=field, default=argparse.SUPPRESS, metavar=field.upper())
    return parser


def _render(report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    return report.to_csv()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    kind = COMMANDS[args.command]
    try:
        values: dict = {}
        if args.config:
            try:
                values.update(read_config_file(args.config))
            except OSError as exc:
                raise ValidationError(f"cannot read config: {exc}") from exc
        values.update({f: getattr(args, f) for f in _CONFIG_FIELDS if hasattr(args, f)})
        cfg = build_config(kind, values)
        report = run(cfg)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except CapError as exc:
        print(f"cap exhausted: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    text = _render(report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        if args.format == "csv" and report.summary:
            print(report.summary_csv(), end="")
    else:
        sys.stdout.write(text)
    for flag in report.flags:
        print(f"note: {flag}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
