"""Command-line entry point: run any check battery and emit reports."""

from __future__ import annotations

import argparse
import sys

from .suite import SELECTORS, emit_report, run_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegelcy",
        description="Exact and numeric verification suite for genus-2 theta "
                    "constants and the associated Calabi-Yau threefold.",
    )
    sub = parser.add_subparsers(dest="selector", required=True)
    for name in sorted(SELECTORS):
        p = sub.add_parser(name, help=f"run the {name!r} check battery")
        p.add_argument("--truncation", type=int, default=12, metavar="N",
                       help="exponent-weight bound for expansions (default 12)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for all sampled checks (default 0)")
        p.add_argument("--tol", type=float, default=1e-8,
                       help="numeric tolerance (default 1e-8)")
        p.add_argument("--json", metavar="PATH", default=None,
                       help="also write the machine-readable report here")
        p.add_argument("--cache", metavar="DIR", default=None,
                       help="directory for plain-text series caches")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run_suite(args.selector, truncation=args.truncation,
                           seed=args.seed, tol=args.tol, cache_dir=args.cache)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(report, "text"))
    if args.json:
        emit_report(report, "json", path=args.json)
    return 0 if report.exit_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
