"""``pbc <command> --config <path> [--sheaf NAME] [--ops CHAIN] [--bound N] [--out PATH]``

Exit codes: 0 success, 2 config error, 3 mathematical inconsistency,
4 size limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .config import load_config
from .errors import ConfigError, PbcError

COMMANDS = ("lattice", "transform", "resolve", "rigidity", "exceptional")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pbc", description=__doc__.split("\n")[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument("--sheaf", help="sheaf name (transform, resolve, rigidity)")
    parser.add_argument("--ops", help="operation chain for transform, e.g. 'minimal-lift;pseudo-twist-up:1'")
    parser.add_argument("--bound", type=int, help="coefficient bound for the -2 class search")
    parser.add_argument("--out", help="write the report here instead of stdout")
    return parser


def run(args: argparse.Namespace) -> dict:
    config = load_config(args.config)
    bound = args.bound if args.bound is not None else config.coeff_bound
    if bound is not None and bound < 1:
        raise ConfigError("must be >= 1", "--bound")
    if args.command in ("transform", "resolve", "rigidity") and not args.sheaf:
        raise ConfigError(f"{args.command} needs --sheaf", "--sheaf")
    if args.command == "lattice":
        return report.lattice_report(config, bound)
    if args.command == "transform":
        if not args.ops:
            raise ConfigError("transform needs --ops", "--ops")
        return report.transform_report(config, args.sheaf, args.ops)
    if args.command == "resolve":
        return report.resolve_report(config, args.sheaf)
    if args.command == "rigidity":
        return report.rigidity_report(config, args.sheaf, bound)
    return report.exceptional_report(config)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = run(args)
        code = 0
    except OSError as exc:
        result = {"command": args.command, "error": {"type": "ConfigError", "message": str(exc), "exit_code": 2}}
        code = 2
    except PbcError as exc:
        result = {"command": args.command,
                  "error": {"type": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}}
        code = exc.exit_code
    if code:
        print(f"pbc: error: {result['error']['message']}", file=sys.stderr)
    text = report.render(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
