"""Command-line front end: ``wthpdk verify | spectrum | scan``.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Sequence

from .checks import SUITES, faulty_representation, run_suite
from .momentum_kernel import ModelParams, mass_spectrum

SCAN_FIELDS = ("A", "B", "M", "M_prime", "valid_primary", "valid_secondary")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _range(text: str) -> tuple[Fraction, Fraction]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like lo:hi, got {text!r}")
    return _fraction(lo), _fraction(hi)


def _number(x):
    """Exact integers print as ints, everything else as a float."""
    if x is None:
        return None
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return float(x)


def spectrum_row(A, B, m) -> dict:
    spec = mass_spectrum(ModelParams(A, B, m))
    return {
        "A": _number(Fraction(A)),
        "B": _number(Fraction(B)),
        "M": _number(spec.M),
        "M_prime": _number(spec.M_prime),
        "valid_primary": spec.primary_ok,
        "valid_secondary": spec.secondary_ok,
    }


def grid(lo: Fraction, hi: Fraction, steps: int) -> list[Fraction]:
    return [lo + (hi - lo) * k / (steps - 1) for k in range(steps)]


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v)


def _emit_rows(rows, fmt: str, out) -> None:
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(row) + "\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SCAN_FIELDS)
    for row in rows:
        writer.writerow([_csv_cell(row[k]) for k in SCAN_FIELDS])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wthpdk", description="Verify and explore the 10-component WTH/PDK equations.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites, one JSON report per line")
    v.add_argument("--suite", default="all", choices=SUITES)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--inject-fault", action="store_true",
                   help="negate entry (2,5) of beta_1 before the algebra checks")
    v.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")

    s = sub.add_parser("spectrum", help="masses M, M' and validity flags for one (A, B, m)")
    s.add_argument("--A", type=_fraction, required=True)
    s.add_argument("--B", type=_fraction, required=True)
    s.add_argument("--m", type=_fraction, default=Fraction(1))
    s.add_argument("--format", choices=("json", "csv"), default="json")

    g = sub.add_parser("scan", help="spectrum over an (A, B) grid")
    g.add_argument("--A-range", dest="A_range", type=_range, required=True)
    g.add_argument("--B-range", dest="B_range", type=_range, required=True)
    g.add_argument("--steps", type=int, default=5)
    g.add_argument("--m", type=_fraction, default=Fraction(1))
    g.add_argument("--format", choices=("json", "csv"), default="csv")
    return parser


def _cmd_verify(args, parser, out) -> int:
    if args.samples < 1:
        parser.error("--samples must be >= 1")
    rep = faulty_representation() if args.inject_fault else None
    ok = True
    for report in run_suite(args.suite, args.seed, args.samples, rep):
        if args.no_timing:
            report.elapsed_ms = 0.0
        out.write(report.to_json() + "\n")
        out.flush()
        ok = ok and report.passed
    return 0 if ok else 1


def _cmd_spectrum(args, parser, out) -> int:
    if args.m <= 0:
        parser.error("--m must be > 0")
    row = spectrum_row(args.A, args.B, args.m)
    row["m"] = _number(args.m)
    if args.format == "json":
        out.write(json.dumps(row) + "\n")
    else:
        _emit_rows([row], "csv", out)
    return 0


def _cmd_scan(args, parser, out) -> int:
    if args.m <= 0:
        parser.error("--m must be > 0")
    if args.steps < 2:
        parser.error("--steps must be >= 2")
    (a_lo, a_hi), (b_lo, b_hi) = args.A_range, args.B_range
    if a_lo >= a_hi or b_lo >= b_hi:
        parser.error("ranges must satisfy lo < hi")
    rows = [spectrum_row(A, B, args.m)
            for A in grid(a_lo, a_hi, args.steps) for B in grid(b_lo, b_hi, args.steps)]
    _emit_rows(rows, args.format, out)
    return 0


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"verify": _cmd_verify, "spectrum": _cmd_spectrum, "scan": _cmd_scan}[args.command]
    return handler(args, parser, out)


if __name__ == "__main__":
    sys.exit(main())
