"""Command-line front end: series printing, Hurwitz cache management,
Rankin-Cohen brackets, and batch relation verification.

Exit codes: 0 on success, 2 when a verified relation fails mathematically,
1 on usage errors (unknown names, bad flags).  Output is byte-deterministic
for fixed inputs, except for the elapsed-time field of verification
reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import forms, holproj, relations
from .arith import hurwitz_cache, kronecker_character
from .scalars import QuadExt

USAGE_ERROR = 1
MATH_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; this front end
    reserves 2 for mathematical failures, so remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _fmt_coeff(x) -> str:
    if isinstance(x, QuadExt):
        return relations.format_scalar(x)
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def build_series(series_id: str, T: int):
    """Resolve a series id: the forms catalog plus the composite ids
    "lambda:s:t:chi:psi:nu", "delta:s:t:chi:psi:nu" and
    "bracket:f:g:k:l:nu" (characters given as kronecker_character
    integers, weights as fractions like 3/2)."""
    parts = series_id.split(":")
    name, args = parts[0], parts[1:]
    if name in ("lambda", "delta"):
        s, t = int(args[0]), int(args[1])
        chi = kronecker_character(int(args[2]))
        psi = kronecker_character(int(args[3]))
        nu = int(args[4])
        fn = holproj.lambda_indef if name == "lambda" else holproj.delta_indef
        return fn(s, t, chi, psi, nu, T)
    if name == "bracket":
        f = forms.build(args[0], T)
        g = forms.build(args[1], T)
        spec = holproj.BracketSpec(Fraction(args[2]), Fraction(args[3]), int(args[4]))
        return holproj.rankin_cohen(f, g, spec)
    return forms.build(series_id, T)


def _emit_series(name: str, series, terms: int, fmt: str) -> None:
    coeffs = [series.coeff(n) for n in range(terms + 1)]
    if fmt == "text":
        print(", ".join(_fmt_coeff(c) for c in coeffs))
    elif fmt == "csv":
        for line in series.truncate(terms).to_csv_lines():
            print(line)
    else:
        print(json.dumps({"name": name, "terms": terms,
                          "coefficients": [_fmt_coeff(c) for c in coeffs]},
                         indent=2))


def cmd_series(args) -> int:
    try:
        series = build_series(args.name, args.terms)
    except (KeyError, IndexError, ValueError) as exc:
        print(f"qrel series: cannot build {args.name!r}: {exc}", file=sys.stderr)
        return USAGE_ERROR
    _emit_series(args.name, series, args.terms, args.format)
    return 0


def cmd_hurwitz(args) -> int:
    cache = hurwitz_cache()
    cache.ensure(args.max)
    try:
        path = cache.save(args.out)
    except OSError as exc:
        print(f"qrel hurwitz: cannot write cache: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(path)
    return 0


def cmd_bracket(args) -> int:
    composite = f"bracket:{args.f}:{args.g}:{args.k}:{args.l}:{args.nu}"
    try:
        series = build_series(composite, args.terms)
    except (KeyError, IndexError, ValueError) as exc:
        print(f"qrel bracket: {exc}", file=sys.stderr)
        return USAGE_ERROR
    _emit_series(composite, series, args.terms, args.format)
    return 0


def cmd_verify(args) -> int:
    try:
        report = relations.run_check(args.relation, args.max)
    except (KeyError, ValueError) as exc:
        print(f"qrel verify: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.json:
        print(report.to_json())
    else:
        print(report.summary_line())
        for n, lhs, rhs in report.failures:
            print(f"  n={n}: lhs={relations.format_scalar(lhs)} "
                  f"rhs={relations.format_scalar(rhs)}")
    return 0 if report.ok else MATH_FAILURE


def cmd_verify_all(args) -> int:
    reports = relations.verify_all(args.max)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for report in reports:
            print(report.summary_line())
    return 0 if all(r.ok for r in reports) else MATH_FAILURE


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qrel",
                     description="Exact q-series identities: class number "
                                 "relations, trace formulas, indefinite "
                                 "theta series.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "csv", "json"),
                       default="text", help="output format (default: text)")

    p = sub.add_parser("series", parents=[], help="print q-expansion coefficients")
    p.add_argument("--name", required=True,
                   help="catalog id (H, theta, G2, Delta, eta2_12, g7, "
                        "theta_half:s:chi, theta32:s:chi, theta_pa:p:a) or "
                        "composite lambda:s:t:chi:psi:nu / delta:... / "
                        "bracket:f:g:k:l:nu")
    p.add_argument("--terms", type=int, default=20,
                   help="highest exponent to print (default: 20)")
    add_format(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("hurwitz", help="build/extend the Hurwitz class number cache")
    p.add_argument("--max", type=int, required=True, help="largest n to cache")
    p.add_argument("--out", default=None,
                   help="write the CSV here instead of the cache directory "
                        "(env QREL_CACHE_DIR, default ./.qrel-cache/)")
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("bracket", help="Rankin-Cohen bracket of two catalog series")
    p.add_argument("--f", required=True, help="catalog id of the first series")
    p.add_argument("--g", required=True, help="catalog id of the second series")
    p.add_argument("--k", required=True, help="weight of f, e.g. 3/2")
    p.add_argument("--l", required=True, help="weight of g, e.g. 1/2")
    p.add_argument("--nu", type=int, default=0, help="bracket degree (default: 0)")
    p.add_argument("--terms", type=int, default=20)
    add_format(p)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("verify", help="check one named relation exactly")
    p.add_argument("relation", help="one of: " + ", ".join(relations.relation_ids()))
    p.add_argument("--max", type=int, default=None,
                   help="upper end of the index range (default: per relation)")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-all", help="run every registered relation check")
    p.add_argument("--max", type=int, default=None,
                   help="override the per-relation default ranges")
    p.add_argument("--json", action="store_true", help="emit JSON reports")
    p.set_defaults(func=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
