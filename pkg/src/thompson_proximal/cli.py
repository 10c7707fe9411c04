"""Command-line entry point: ``thompson-proximal <command> ...``.

Exit codes: 0 success, 1 check failure or exhausted search, 2 bad input
syntax, 3 radius over the cap, 4 insufficient agreement for a certificate.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .actions import (
    LimitNotFound,
    RadiusCapExceeded,
    limit_check,
    parse_lambda_point,
    radius_cap,
    schreier_ball,
)
from .configs import PartialConfig
from .numerics import DyadicParseError, format_dyadic, parse
from .proximal import InsufficientAgreement, z_proximality_check
from .verify import SUITES, run_suite

log = logging.getLogger("thompson_proximal")

EXIT_FAIL = 1
EXIT_SYNTAX = 2
EXIT_CAP = 3
EXIT_AGREEMENT = 4


def _write(text: str, out: str | None):
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def parse_n_range(text: str) -> range:
    """``lo..hi`` (inclusive), ``lo:hi`` (inclusive) or a single integer."""
    for sep in ("..", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError(f"empty range {text!r}")
            return range(lo, hi + 1)
    n = int(text)
    return range(n, n + 1)


def parse_target(text: str) -> list:
    return [parse(t) for t in text.split(",") if t.strip()]


def cmd_schreier(args) -> int:
    try:
        root = parse(args.root) if args.space == "gamma" else parse_lambda_point(args.root)
    except (DyadicParseError, ValueError) as exc:
        log.error("bad root: %s", exc)
        return EXIT_SYNTAX
    try:
        ball = schreier_ball(args.space, root, args.radius)
    except RadiusCapExceeded as exc:
        log.error("%s", exc)
        return EXIT_CAP
    _write(ball.dumps(args.format), args.out)
    return 0


def cmd_limit_check(args) -> int:
    radii = [int(r) for r in str(args.radius).split(",")]
    status = 0
    for r in radii:
        if r > radius_cap():
            log.error("radius %d exceeds cap %d", r, radius_cap())
            return EXIT_CAP
        try:
            n = limit_check(r, args.n_max, args.window)
        except LimitNotFound as exc:
            print(f"radius {r}: {exc}")
            status = EXIT_FAIL
            continue
        print(f"radius {r}: N = {n} (window {args.window}, nMax {args.n_max})")
    return status


def cmd_proximal(args) -> int:
    try:
        x1 = PartialConfig.load(args.x1)
        x2 = PartialConfig.load(args.x2)
        target = parse_target(args.target)
        n_range = parse_n_range(args.n_range)
    except (ValueError, KeyError, OSError) as exc:
        log.error("bad input: %s", exc)
        return EXIT_SYNTAX
    try:
        res = z_proximality_check(x1, x2, target, n_range)
    except InsufficientAgreement as exc:
        log.error("%s", exc)
        print(f"achievable window size: {exc.achievable}", file=sys.stderr)
        return EXIT_AGREEMENT
    cert = res.certificate
    _write(json.dumps(res.to_json(), indent=2, sort_keys=True) + "\n", args.out)
    print(f"alpha = {cert.alpha:+d}", file=sys.stderr)
    print(
        "witness maps "
        + ", ".join(f"{format_dyadic(v)} -> {format_dyadic(w)}" for v, w in zip(cert.source_set, cert.target_window)),
        file=sys.stderr,
    )
    print(
        f"verified on {len(cert.target_window)} x {len(res.n_range)} coordinates: "
        + ("pair classes agree" if res.agrees else "MISMATCH"),
        file=sys.stderr,
    )
    return 0 if res.agrees else EXIT_FAIL


def cmd_verify(args) -> int:
    def progress(r):
        line = f"{r.status.upper():4s} {r.suite}/{r.name} n={r.count} {r.elapsed:.2f}s"
        if r.message:
            line += f"  {r.message}"
        print(line)

    report, _ = run_suite(args.suite, seed=args.seed, scale=args.scale, fixtures=args.fixtures, progress=progress)
    Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"{report['status']}: report written to {args.out}")
    return 0 if report["status"] == "pass" else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thompson-proximal", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schreier", help="export a Schreier ball as DOT or JSON")
    p.add_argument("--space", choices=("gamma", "lambda"), default="gamma")
    p.add_argument("--root", default="0", help='dyadic like "3/2^2", or "(n,gamma)" on lambda')
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_schreier)

    p = sub.add_parser("limit-check", help="find N(r) for balls around 1/2^n vs (0,0)")
    p.add_argument("--radius", default="1", help="radius or comma-separated radii")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--window", type=int, default=4)
    p.set_defaults(func=cmd_limit_check)

    p = sub.add_parser("proximal", help="build and check a proximality certificate")
    p.add_argument("x1")
    p.add_argument("x2")
    p.add_argument("--target", required=True, help="comma-separated dyadics")
    p.add_argument("--n-range", default="-2..2")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_proximal)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0, help="sample-count multiplier")
    p.add_argument("--fixtures", default=None, help="fixture directory (defaults to the packaged one)")
    p.add_argument("--out", default="verification_report.json")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
