"""Command-line front end.

Exit status: 0 on success or a passing check, 1 when a check fails, 2 on a
usage error or an unmet theorem hypothesis.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds, convexity, extremality, rules
from .errors import HypothesisError, QuadError
from .expr import differentiate, parse
from .operators import PositiveLinearOperator, hybrid_example

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(payload: dict, table: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(table)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def _expr(args):
    _require(args.expr is not None, "--expr is required")
    return parse(args.expr)


def cmd_nodes(args) -> int:
    rule = rules.build(args.family, args.n)
    _emit(rule.to_dict(), rule.to_table(), args.format)
    return EXIT_OK


def cmd_integrate(args) -> int:
    e = _expr(args)
    _require(args.a < args.b, "--a must be smaller than --b")
    rule = rules.build(args.family, args.n)
    value = rules.apply_on_interval(rule, e, args.a, args.b)
    payload = {"rule": rule.name, "expr": args.expr, "a": args.a, "b": args.b, "value": value}
    _emit(payload, f"{rule.name} on [{args.a:g}, {args.b:g}]: {value:.17g}", args.format)
    return EXIT_OK


def cmd_check_convexity(args) -> int:
    e = _expr(args)
    _require(args.n >= 1, "--n must be >= 1")
    _require(args.grid >= args.n + 2, f"--grid must be at least n + 2 = {args.n + 2}")
    _require(args.a < args.b, "--a must be smaller than --b")
    report = convexity.is_n_convex_on_grid(e, args.n, convexity.uniform_grid(args.grid, args.a, args.b), args.tol)
    window = ", ".join(f"{x:.17g}" for x in report.window)
    table = "\n".join(
        [
            f"{args.n}-convexity of {args.expr} on {args.grid}-point grid over [{args.a:g}, {args.b:g}]",
            f"windows checked       {report.windows_checked}",
            f"min divided diff      {report.min_value:.17g}",
            f"at window             [{window}]",
            f"result                {'PASS' if report.passed else 'FAIL'} (tol {args.tol:g})",
        ]
    )
    _emit(report.to_dict(), table, args.format)
    return EXIT_OK if report.passed else EXIT_FAIL


def _load_operator(source: str) -> PositiveLinearOperator:
    if source == "hybrid":
        return hybrid_example()
    if source.startswith("@"):
        with open(source[1:], encoding="utf-8") as fh:
            return PositiveLinearOperator.from_json(fh.read(), name=source[1:])
    return PositiveLinearOperator.from_json(source, name="operator")


def cmd_check_extremality(args) -> int:
    e = _expr(args)
    _require(args.n >= 1, "--n must be >= 1")
    if args.operator is None:
        report = extremality.hadamard_chain(e, args.n, args.parity, args.tol)
    else:
        T = _load_operator(args.operator)
        check = extremality.check_odd_sandwich if args.parity == "odd" else extremality.check_even_sandwich
        report = check(T, e, args.n, args.tol)
    _emit(report.to_dict(), report.to_table(), args.format)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_support(args) -> int:
    e = _expr(args)
    _require(args.n >= 1, "--n must be >= 1")
    _require(args.samples >= 100, "--samples must be >= 100")
    cert = convexity.certify_support(e, differentiate(e, 1), args.kind, args.n, args.samples, args.tol)
    p = cert.polynomial
    table = "\n".join(
        [
            f"{cert.kind.value} support polynomial of degree {p.degree} for {args.expr} (n={args.n})",
            "centers       " + " ".join(f"{z:.17g}" for z in p.centers),
            "coefficients  " + " ".join(f"{c:.17g}" for c in p.coefficients),
            f"side          {cert.side.value}",
            f"samples       {cert.sample_count}",
            f"worst         {cert.worst_violation:.17g} at x={cert.worst_at:.17g}",
            f"node residual {cert.node_residual:.17g}",
            f"result        {'PASS' if cert.passed else 'FAIL'} (tol {args.tol:g})",
        ]
    )
    _emit(cert.to_dict(), table, args.format)
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_certify(args) -> int:
    e = _expr(args)
    _require(args.k >= 2, "--k must be >= 2")
    _require(args.deriv_bound is None or args.deriv_bound >= 0, "--deriv-bound must be nonnegative")
    cert = bounds.certified_integrate(e, args.k, args.deriv_bound, args.family, expr=e)
    lo, hi = cert.enclosure
    table = "\n".join(
        [
            f"operator     {cert.operator_id}",
            f"k            {cert.k}",
            f"alpha_k      {cert.alpha_k.numerator}/{cert.alpha_k.denominator}",
            f"|f^(k)| <=   {cert.derivative_bound:.17g}" + ("" if cert.certified else "  (estimated, non-certified)"),
            f"estimate     {cert.estimate:.17g}",
            f"bound        {cert.bound:.17g}",
            f"enclosure    [{lo:.17g}, {hi:.17g}]",
            f"certified    {str(cert.certified).lower()}",
        ]
    )
    _emit(cert.to_dict(), table, args.format)
    return EXIT_OK


def cmd_constants(args) -> int:
    _require(args.k is not None or args.n is not None, "give --k and/or --n")
    payload: dict = {}
    lines = []
    if args.k is not None:
        _require(args.k >= 2, "--k must be >= 2")
        a = bounds.alpha(args.k)
        payload["alpha"] = {"k": args.k, "value": f"{a.numerator}/{a.denominator}"}
        lines.append(f"alpha_{args.k} = {a.numerator}/{a.denominator}")
    if args.n is not None:
        payload["classical"] = []
        for fam in rules.Family:
            if fam is not rules.Family.GAUSS_LEGENDRE and args.n < 2:
                continue
            c = bounds.classical_error_constant(fam, args.n)
            payload["classical"].append(
                {"family": fam.value, "n": args.n, "value": f"{c.value.numerator}/{c.value.denominator}", "order": c.order}
            )
            lines.append(f"{fam.value}({args.n}): {c.value.numerator}/{c.value.denominator} * f^({c.order})")
    _emit(payload, "\n".join(lines), args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--tol", type=float, default=1e-10)

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", type=rules.Family.parse, default=rules.Family.GAUSS_LEGENDRE,
                     help="gauss, lobatto, radau-left or radau-right")

    parser = argparse.ArgumentParser(prog="quadextremal", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nodes", parents=[common, fam], help="print a rule's nodes and weights")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_nodes)

    p = sub.add_parser("integrate", parents=[common, fam], help="apply a rule on [a, b]")
    p.add_argument("--expr", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, default=-1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("check-convexity", parents=[common], help="grid test of n-convexity")
    p.add_argument("--expr", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--a", type=float, default=-1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.set_defaults(func=cmd_check_convexity)

    p = sub.add_parser("check-extremality", parents=[common], help="Gauss/Lobatto or Radau sandwich")
    p.add_argument("--expr", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parity", choices=("odd", "even"), default="odd")
    p.add_argument("--operator", help="'hybrid', a JSON operator description, or @file.json")
    p.set_defaults(func=cmd_check_extremality)

    p = sub.add_parser("support", parents=[common], help="build and verify a support polynomial")
    p.add_argument("--expr", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=[k.value for k in convexity.SupportKind], default="gauss-lower")
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("certify", parents=[common, fam], help="error-bound enclosure of the integral")
    p.add_argument("--expr", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--deriv-bound", type=float, help="sup |f^(k)| on [-1, 1]; estimated if omitted")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("constants", parents=[common], help="alpha_k and classical error constants")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_constants)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisError as exc:
        print(f"hypothesis error: {exc}", file=sys.stderr)
        if exc.raw is not None:
            print(exc.raw.to_table(), file=sys.stderr)
        return EXIT_USAGE
    except (QuadError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
