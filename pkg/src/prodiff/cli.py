"""Command-line front end.

Subcommands parse JSON inputs (inline, from a file, or `-` for stdin),
dispatch to the library, and print canonical JSON. The exit-code contract:
0 success, 1 failed verification, 2 bad input or usage, 3 precondition
violation on valid input, 4 internal invariant violation. The PRODIFF_LOG
environment variable sets the logging level (e.g. DEBUG).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import freealg, jsonio, lie, norms, reports, series, triangular, verify
from .errors import (
    InputFormatError,
    InvariantViolation,
    LPUnboundedError,
    PreconditionError,
)
from .rational import format_rational, parse_rational

log = logging.getLogger("prodiff")


def load_json_argument(text: str) -> object:
    """Inline JSON, a file path, or '-' for stdin."""
    if text == "-":
        raw = sys.stdin.read()
    elif text.lstrip().startswith(("{", "[")):
        raw = text
    else:
        try:
            with open(text, "r", encoding="utf-8") as handle:
                raw = handle.read()
        except OSError as exc:
            raise InputFormatError(f"cannot read input file {text!r}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc}") from exc


def _emit(args: argparse.Namespace, text: str) -> None:
    output = getattr(args, "output", None)
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _print_json(args: argparse.Namespace, obj: object) -> None:
    _emit(args, jsonio.dumps_canonical(obj))


def _rat(text: str, key: str) -> Fraction:
    return parse_rational(text, key)


# --- subcommand handlers ----------------------------------------------------

def cmd_compose(args: argparse.Namespace) -> int:
    first = jsonio.obj_to_diffeo(load_json_argument(args.first), args.order)
    second = jsonio.obj_to_diffeo(load_json_argument(args.second), args.order)
    order = min(first.order, second.order)
    result = series.compose(first.truncate(order), second.truncate(order))
    _print_json(args, jsonio.diffeo_to_obj(result))
    return 0


def cmd_invert(args: argparse.Namespace) -> int:
    gamma = jsonio.obj_to_diffeo(load_json_argument(args.input), args.order)
    if args.algorithm == "recursive":
        result = series.invert_recursive(gamma)
    else:
        result = series.invert_lagrange(gamma)
    _print_json(args, jsonio.diffeo_to_obj(result))
    return 0


def cmd_exp(args: argparse.Namespace) -> int:
    field = jsonio.obj_to_field(load_json_argument(args.input), args.order)
    gamma = lie.exp_field(field)
    obj = jsonio.diffeo_to_obj(gamma)
    if args.dump_matrix:
        obj["matrix"] = jsonio.matrix_to_rows(
            triangular.substitution_matrix(gamma, gamma.order))
    _print_json(args, obj)
    return 0


def cmd_log(args: argparse.Namespace) -> int:
    gamma = jsonio.obj_to_diffeo(load_json_argument(args.input), args.order)
    field = lie.log_diffeo(gamma)
    obj = jsonio.field_to_obj(field)
    if args.dump_matrix:
        obj["matrix"] = jsonio.matrix_to_rows(
            triangular.field_matrix(field, field.order))
    _print_json(args, obj)
    return 0


def cmd_bch(args: argparse.Namespace) -> int:
    first = jsonio.obj_to_field(load_json_argument(args.first), args.order)
    second = jsonio.obj_to_field(load_json_argument(args.second), args.order)
    order = min(first.order, second.order)
    result = lie.bch(first.truncate(order), second.truncate(order))
    _print_json(args, jsonio.field_to_obj(result))
    return 0


def cmd_norm(args: argparse.Namespace) -> int:
    obj = load_json_argument(args.input)
    if not isinstance(obj, dict) or obj.get("kind") not in ("diffeo", "field"):
        raise InputFormatError(
            'norm input must be an object with "kind": "diffeo" or "field"',
            key="kind")
    kind = obj["kind"]
    if args.space == "w":
        if kind != "diffeo":
            raise PreconditionError("the sigma-weighted norm takes a diffeomorphism")
        gamma = jsonio.obj_to_diffeo(obj, args.order)
        out = jsonio.normvalue_to_obj(
            norms.diffeo_norm(gamma, _rat(args.sigma, "sigma")))
    elif args.space == "vt":
        if kind != "field":
            raise PreconditionError("the t-weighted sandwich takes a vector field")
        field = jsonio.obj_to_field(obj, args.order)
        lower, upper = norms.field_norm_bound(field, _rat(args.t, "t"))
        out = {
            "lower": jsonio.normvalue_to_obj(lower),
            "upper": jsonio.normvalue_to_obj(upper),
        }
    else:  # op
        if kind == "diffeo":
            gamma = jsonio.obj_to_diffeo(obj, args.order)
            matrix = triangular.substitution_matrix(gamma, gamma.order)
        else:
            field = jsonio.obj_to_field(obj, args.order)
            matrix = triangular.field_matrix(field, field.order)
        out = jsonio.normvalue_to_obj(
            norms.operator_norm_trunc(matrix, _rat(args.t, "t"), args.columns))
        if args.dump_matrix:
            out["matrix"] = jsonio.matrix_to_rows(matrix)
    _print_json(args, out)
    return 0


def cmd_qnorm(args: argparse.Namespace) -> int:
    t = _rat(args.t, "t")
    if args.table is not None:
        if args.table != "Ln":
            raise InputFormatError(
                f"unknown table {args.table!r}; only 'Ln' is available", key="table")
        _print_json(args, reports.qtable_report(
            t, args.nmax, args.columns or 40, args.lp_pivot))
        return 0
    if args.input is None:
        raise InputFormatError("qnorm needs an element (or --table Ln)", key="input")
    element = jsonio.obj_to_uelement(load_json_argument(args.input))
    result = freealg.quotient_norm_result(element.scale_graded(t), args.lp_pivot)
    out = {
        "command": "qnorm",
        "t": format_rational(t),
        "value": format_rational(result.value),
        "by_degree": {str(n): format_rational(v) for n, v in result.by_degree},
        "certificate": {
            str(n): {jsonio.monomial_to_str(word): format_rational(coeff)
                     for word, coeff in chosen}
            for n, chosen in result.certificate
        },
    }
    if args.upper:
        field = _field_like(element)
        bound = freealg.field_quotient_upper(field, t)
        out["upper"] = {
            "certified": jsonio.normvalue_to_obj(bound.certified),
            "as_displayed": format_rational(bound.as_displayed),
        }
    if args.lower:
        scale = _rat(args.vt, "vt") if args.vt is not None else t
        lower = freealg.quotient_lower_bound(element, scale, args.columns or 30)
        out["lower"] = {
            "value": jsonio.normvalue_to_obj(lower.value),
            "scale": format_rational(lower.scale),
            "halved_scale_reading": format_rational(lower.halved_scale_reading),
        }
    _print_json(args, out)
    return 0


def _field_like(element: freealg.EnvelopingElement):
    """Reassemble a plain vector field from length-one monomial components."""
    coeffs: dict[int, Fraction] = {}
    for degree in element.degrees():
        for mono, coeff in element.components[degree].items():
            if len(mono) != 1:
                raise PreconditionError(
                    "the upper bound applies to vector fields (single-index "
                    f"monomials); found {jsonio.monomial_to_str(mono)}")
            coeffs[mono[0]] = coeff
    order = max(coeffs) if coeffs else 1
    from .series import FormalVectorField

    return FormalVectorField.from_coefficients(order, coeffs)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in verify.SUITE_NAMES:
        raise InputFormatError(
            f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITE_NAMES)}",
            key="suite")
    report = verify.run_suite(args.suite, args.order, args.seed)
    _print_json(args, report)
    if not report["all_passed"]:
        log.error("verification failed")
        return 1
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    if args.kind == "qtable":
        report = reports.qtable_report(
            _rat(args.t, "t"), args.nmax, args.columns or 40, args.lp_pivot)
    else:
        coeffs = None
        if args.coeffs:
            if args.coeffs.lstrip().startswith("["):
                try:
                    parsed = json.loads(args.coeffs)
                except json.JSONDecodeError as exc:
                    raise InputFormatError(f"invalid coefficient list: {exc}",
                                           key="coeffs") from exc
            else:
                parsed = args.coeffs.split(",")
            coeffs = [parse_rational(c, f"coeffs[{i}]") for i, c in enumerate(parsed)]
        report = reports.membership_report(
            args.rule, args.order, _rat(args.r, "r"), coeffs)
    if args.format == "csv":
        _emit(args, reports.report_to_csv(report))
    else:
        _print_json(args, report)
    if args.figure:
        reports.render_figure(report, args.figure)
        log.info("figure written to %s", args.figure)
    return 0


# --- parser -----------------------------------------------------------------

def _add_io_flags(parser: argparse.ArgumentParser, order_default: int = 12) -> None:
    parser.add_argument("--order", type=int, default=order_default,
                        help="truncation order for inputs given without one")
    parser.add_argument("--output", help="write the result here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodiff",
        description="Exact computations in the group of formal diffeomorphisms, "
                    "its Lie algebra, and their weighted norms.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("compose", help="compose two diffeomorphisms (apply first, then second)")
    p.add_argument("first")
    p.add_argument("second")
    _add_io_flags(p)
    p.set_defaults(handler=cmd_compose)

    p = sub.add_parser("invert", help="compositional inverse")
    p.add_argument("input")
    p.add_argument("--algorithm", choices=("lagrange", "recursive"),
                   default="lagrange")
    _add_io_flags(p)
    p.set_defaults(handler=cmd_invert)

    p = sub.add_parser("exp", help="flow of a vector field (order rises by one)")
    p.add_argument("input")
    p.add_argument("--dump-matrix", action="store_true")
    _add_io_flags(p)
    p.set_defaults(handler=cmd_exp)

    p = sub.add_parser("log", help="logarithm of a diffeomorphism (order drops by one)")
    p.add_argument("input")
    p.add_argument("--dump-matrix", action="store_true")
    _add_io_flags(p)
    p.set_defaults(handler=cmd_log)

    p = sub.add_parser("bch", help="log of the composed flows of two fields")
    p.add_argument("first")
    p.add_argument("second")
    _add_io_flags(p)
    p.set_defaults(handler=cmd_bch)

    p = sub.add_parser("norm", help="weighted and operator norms")
    p.add_argument("input")
    p.add_argument("--space", choices=("w", "vt", "op"), required=True)
    p.add_argument("--sigma", default="1", help="weight for --space w")
    p.add_argument("--t", default="1", help="weight for --space vt / op")
    p.add_argument("--columns", type=int, help="column budget for --space op")
    p.add_argument("--dump-matrix", action="store_true")
    _add_io_flags(p)
    p.set_defaults(handler=cmd_norm)

    p = sub.add_parser("qnorm", help="quotient norm on the enveloping algebra")
    p.add_argument("input", nargs="?")
    p.add_argument("--t", default="1", help="grading scale")
    p.add_argument("--upper", action="store_true",
                   help="add the closed-form upper bound (vector fields only)")
    p.add_argument("--lower", action="store_true",
                   help="add the represented-operator lower certificate")
    p.add_argument("--vt", help="certificate scale for --lower (defaults to --t)")
    p.add_argument("--columns", type=int, help="column budget for --lower")
    p.add_argument("--table", help="tabulate a basis family instead (Ln)")
    p.add_argument("--nmax", type=int, default=8, help="table size for --table")
    p.add_argument("--lp-pivot", choices=("bland", "dantzig"), default="bland")
    _add_io_flags(p)
    p.set_defaults(handler=cmd_qnorm)

    p = sub.add_parser("verify", help="run the seeded invariant suites")
    p.add_argument("suite", help=f"one of: {', '.join(verify.SUITE_NAMES)}")
    p.add_argument("--order", type=int, default=None,
                   help="override each suite's default truncation order")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("report", help="assemble a table report (JSON or CSV)")
    p.add_argument("kind", choices=reports.REPORT_KINDS)
    p.add_argument("--t", default="1", help="grading scale for qtable")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--columns", type=int, help="lower-certificate column budget")
    p.add_argument("--lp-pivot", choices=("bland", "dantzig"), default="bland")
    p.add_argument("--rule", default="geometric",
                   help=f"membership family: {', '.join(norms.MEMBERSHIP_RULES)}")
    p.add_argument("--r", default="1", help="family parameter for membership")
    p.add_argument("--order", type=int, default=24, help="membership truncation")
    p.add_argument("--coeffs", help="comma-separated tail for --rule user")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.add_argument("--figure", help="also render the report to this image file")
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("PRODIFF_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    log.debug("dispatch %s", args.subcommand)
    try:
        return args.handler(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, LPUnboundedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 4


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
