"""Command line entry point: ``verify --family D --rank 4 --curve principal``."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .scenario import CHECKS, CURVES, FORMATS, ConfigError, ScenarioConfig, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on its own; keep that but route through main
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="verify", description="Certify local Plücker identities for curves in flag varieties.")
    p.add_argument("--family", required=True, help="A, B or D")
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--curve", default="principal", choices=CURVES,
                   help="principal orbit, seeded random curve (type A) or translate (B/D), or a JSON file (type A)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--curve-file", dest="curve_file")
    p.add_argument("--degree", type=int, help="degree of random type A curves (default rank + 2)")
    p.add_argument("--checks", default=",".join(CHECKS), help=f"comma separated subset of {','.join(CHECKS)}")
    p.add_argument("--numeric-points", dest="numeric_points", type=int, default=10)
    p.add_argument("--format", dest="fmt", default="json", choices=FORMATS)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--corrupt", help="multiply the named h-function by (1 + zw) as a negative control")
    return p


def parse_config(argv: Optional[List[str]] = None) -> tuple:
    args = build_parser().parse_args(argv)
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    config = ScenarioConfig(
        family=args.family.upper(),
        rank=args.rank,
        curve=args.curve,
        seed=args.seed,
        curve_file=args.curve_file,
        checks=checks,
        numeric_points=args.numeric_points,
        fmt=args.fmt,
        corrupt=args.corrupt,
        degree=args.degree,
    )
    config.validate()
    return config, args.out


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "verify":
        argv = argv[1:]
    if any(a in ("-h", "--help") for a in argv):
        build_parser().print_help()
        return EXIT_OK
    try:
        config, out = parse_config(argv)
        report, code = run_scenario(config)
    except ConfigError as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.render(config.fmt)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
