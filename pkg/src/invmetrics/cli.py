"""Command-line front end: ``eval``, ``demo`` and ``verify``.

Exit codes: 0 success, 2 bad input, 3 no exact value (bounds without
``--allow-bounds``, or no proven value), 4 point outside the domain,
5 property failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .balanced import ConvergenceFailure
from .demos import DEMOS, run_demo
from .domains import SpecError, parse_domain
from .foundations import (
    ComplexVector,
    DimensionMismatch,
    DomainViolation,
    InvalidKind,
    InvalidValue,
    InvariantError,
    MetricKind,
    MetricValue,
    UnsupportedKind,
)
from .hartogs import InvalidBase, NotProven, RegionViolation, SingularPoint
from .verify import SUITES, PropertySuite, report_json, report_text, run_suite

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_EXACT = 3
EXIT_DOMAIN = 4
EXIT_PROPERTY = 5

SEED_ENV = "INVMETRICS_SEED"


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def write_csv(stream, columns: Sequence[str], rows: Sequence[Sequence]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


def _error(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


# --- eval -----------------------------------------------------------------------


def _load_spec(path: str) -> dict:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return json.loads(text)


def _value_payload(value: MetricValue) -> dict:
    out = {"lower": value.lower, "upper": value.upper, "status": value.status.value}
    if value.citation:
        out["citation"] = value.citation
    if value.certified_error:
        out["certified_error"] = value.certified_error
    return out


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        doc = _load_spec(args.spec)
        domain = parse_domain(doc)
        kind = MetricKind.parse(args.metric, args.order)
        base = ComplexVector.parse(args.base)
        w = ComplexVector.parse(args.target if args.target is not None else args.dir)
    except (OSError, json.JSONDecodeError) as exc:
        return _error(f"cannot read spec: {exc}", EXIT_INPUT)
    except (SpecError, InvalidValue, InvalidKind, DimensionMismatch) as exc:
        return _error(str(exc), EXIT_INPUT)

    if kind.is_function and args.target is None:
        return _error(f"{kind} needs --target", EXIT_INPUT)
    if kind.is_metric and args.dir is None:
        return _error(f"{kind} needs --dir", EXIT_INPUT)

    try:
        if kind.is_function:
            value = domain.function(kind, base, w)
        else:
            value = domain.metric(kind, base, w)
    except (DomainViolation, SingularPoint) as exc:
        return _error(str(exc), EXIT_DOMAIN)
    except (NotProven, InvalidBase, RegionViolation, UnsupportedKind, ConvergenceFailure) as exc:
        return _error(str(exc), EXIT_NOT_EXACT)
    except (InvalidValue, InvalidKind, DimensionMismatch) as exc:
        return _error(str(exc), EXIT_INPUT)

    payload = _value_payload(value)
    if args.format == "json":
        print(json.dumps(payload))
    else:
        cols = ["lower", "upper", "status", "citation", "certified_error"]
        write_csv(sys.stdout, cols, [[payload.get(c, "") for c in cols]])
    if value.is_exact or args.allow_bounds:
        return EXIT_OK
    return EXIT_NOT_EXACT


# --- demo -----------------------------------------------------------------------


def cmd_demo(args: argparse.Namespace) -> int:
    if args.name not in DEMOS:
        return _error(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}", EXIT_INPUT)
    table = run_demo(args.name)
    stream, close = _open_out(args.out)
    try:
        write_csv(stream, table.columns, table.rows)
    finally:
        if close:
            stream.close()
    verdict = "reproduced" if table.holds else "NOT reproduced"
    print(f"{table.name}: phenomenon {verdict} ({len(table.rows)} rows)", file=sys.stderr)
    return EXIT_OK if table.holds else EXIT_PROPERTY


# --- verify ---------------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InvalidValue(f"{SEED_ENV}={raw!r} is not an integer") from None


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        return _error(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}",
                      EXIT_INPUT)
    try:
        seed = args.seed if args.seed is not None else _default_seed()
        suite = PropertySuite(args.suite, seed=seed, samples=args.samples)
    except InvariantError as exc:
        return _error(str(exc), EXIT_INPUT)
    report = run_suite(suite)
    if args.report:
        Path(args.report).write_text(report_json(report), encoding="utf-8", newline="\n")
    sys.stdout.write(report_text(report))
    return EXIT_OK if report["passed"] else EXIT_PROPERTY


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # argparse exits with status 2 on usage errors, matching the bad-input code.
    parser = argparse.ArgumentParser(prog="invmetrics", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one function or pseudometric")
    ev.add_argument("spec", help="domain spec JSON file ('-' for stdin)")
    ev.add_argument("--metric", required=True,
                    help="mobius, caratheodory, green, azukawa, sibony-function, sibony-metric")
    ev.add_argument("--order", type=int, default=None, help="Sibony order (default 2)")
    ev.add_argument("--base", required=True, help="base point as re:im,re:im,...")
    target = ev.add_mutually_exclusive_group(required=True)
    target.add_argument("--target", help="second point (function kinds)")
    target.add_argument("--dir", help="tangent direction (metric kinds)")
    ev.add_argument("--format", choices=("json", "csv"), default="json")
    ev.add_argument("--allow-bounds", action="store_true",
                    help="exit 0 on Bounds/Unknown results as well")
    ev.set_defaults(func=cmd_eval)

    de = sub.add_parser("demo", help="write a CSV table reproducing a counterexample")
    de.add_argument("name", help=", ".join(DEMOS))
    de.add_argument("--out", default="-", help="output CSV file (default stdout)")
    de.set_defaults(func=cmd_demo)

    ve = sub.add_parser("verify", help="run seeded property suites")
    ve.add_argument("--suite", default="all", help="all, " + ", ".join(SUITES))
    ve.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV} or 0")
    ve.add_argument("--samples", type=int, default=200)
    ve.add_argument("--report", default=None, help="write the JSON report here")
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
