"""Command-line front end.

Subcommands: ``basis``, ``interp``, ``eval``, ``expand``, ``verify``,
``compare``.  All data crosses the boundary as JSON with exact rationals
(integers or "p/q" strings); decimal output is presentation-only and opt-in
via ``--precision``.

Exit status: 0 success, 1 usage or parse error, 2 mathematical failure
(rank deficiency, moment cap exceeded, dimension mismatch), 3 verification
failures.

The environment variable RADPOLY_MAX_DEGREE overrides the default degree
cap of the graded-basis construction; an explicit "degree_cap" in the
problem file wins over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from .errors import RadpolyError
from .functionals import expansion_polynomial, radial_power_expansion
from .graded import build_graded_basis
from .interpolation import compare_interpolants, least_interpolate, schaback_interpolate
from .polynomials import Polynomial
from .serialization import (
    ProblemFile,
    comparison_to_obj,
    dumps,
    format_rational,
    graded_basis_to_obj,
    parse_rational,
    polynomial_from_obj,
    polynomial_to_obj,
    problem_from_obj,
    report_to_obj,
)
from .verification import SUITE_NAMES, run_suite

ENV_MAX_DEGREE = "RADPOLY_MAX_DEGREE"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are exit 1 here
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="radpoly", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    basis = sub.add_parser("basis", help="graded basis of the input functionals")
    basis.add_argument("--input", required=True, help="problem file (JSON)")
    basis.add_argument("--output", help="write the result here instead of stdout")

    interp = sub.add_parser("interp", help="build an interpolant")
    interp.add_argument("--input", required=True, help="problem file with values or target")
    interp.add_argument("--method", choices=("schaback", "least", "both"), default="schaback")
    interp.add_argument("--output", help="write the result here instead of stdout")

    evaluate = sub.add_parser("eval", help="evaluate an interpolant or polynomial")
    evaluate.add_argument("--input", required=True,
                          help="interpolant report or polynomial file (JSON)")
    evaluate.add_argument("--at", action="append", required=True, metavar="COORDS",
                          help="query point as comma-separated rationals; repeatable")
    evaluate.add_argument("--method", choices=("schaback", "least"),
                          help="pick a side of a --method both report")
    evaluate.add_argument("--precision", type=int,
                          help="additionally render values with this many decimals")
    evaluate.add_argument("--output", help="write the result here instead of stdout")

    expand = sub.add_parser("expand", help="list the separated radial power expansion")
    expand.add_argument("--k", type=int, required=True)
    expand.add_argument("--d", type=int, required=True)
    expand.add_argument("--output", help="write the result here instead of stdout")

    verify = sub.add_parser("verify", help="run a seeded verification suite")
    verify.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--trials", type=int, default=25)
    verify.add_argument("--corrupt", action="store_true",
                        help="deliberately break one check per suite (harness self-test)")
    verify.add_argument("--output", help="write the report here instead of stdout")

    compare = sub.add_parser("compare", help="compare the two interpolants on a point set")
    compare.add_argument("--input", required=True, help="problem file with points")
    compare.add_argument("--probe-degree", type=int, default=3)
    compare.add_argument("--output", help="write the result here instead of stdout")

    return parser


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


def _load_problem(path: str) -> ProblemFile:
    return problem_from_obj(_load_json(path))


def _resolve_cap(problem: ProblemFile) -> int | None:
    if problem.degree_cap is not None:
        return problem.degree_cap
    env = os.environ.get(ENV_MAX_DEGREE)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise _UsageError(f"{ENV_MAX_DEGREE} must be an integer, got {env!r}") from exc
    return None


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _parse_query_point(text: str) -> tuple[Fraction, ...]:
    pieces = [piece.strip() for piece in text.split(",")]
    if not pieces or any(not piece for piece in pieces):
        raise ValueError(f"bad query point {text!r}")
    return tuple(parse_rational(piece) for piece in pieces)


def _render_decimal(value: Fraction, digits: int) -> str:
    """Fixed-point rendering, round half away from zero.  Presentation only."""
    if digits < 0:
        raise ValueError("precision must be >= 0")
    sign = "-" if value < 0 else ""
    scaled = abs(value.numerator) * 10**digits
    quotient, remainder = divmod(scaled, value.denominator)
    if 2 * remainder >= value.denominator:
        quotient += 1
    text = str(quotient).rjust(digits + 1, "0")
    if digits:
        return f"{sign}{text[:-digits]}.{text[-digits:]}"
    return sign + text


# ---------------------------------------------------------------------------
# Commands


def _cmd_basis(args) -> int:
    problem = _load_problem(args.input)
    graded = build_graded_basis(problem.functionals, _resolve_cap(problem))
    _emit(dumps(graded_basis_to_obj(graded)), args.output)
    return 0


def _cmd_interp(args) -> int:
    problem = _load_problem(args.input)
    if (problem.values is None) == (problem.target is None):
        raise ValueError("interpolation needs exactly one of 'values' or 'target'")
    graded = build_graded_basis(problem.functionals, _resolve_cap(problem))
    kwargs = (
        {"data": list(problem.values)} if problem.values is not None
        else {"target": problem.target}
    )
    if args.method == "schaback":
        out = report_to_obj(schaback_interpolate(graded, **kwargs))
    elif args.method == "least":
        out = report_to_obj(least_interpolate(graded, **kwargs))
    else:
        left = schaback_interpolate(graded, **kwargs)
        right = least_interpolate(graded, **kwargs)
        out = {
            "schaback": report_to_obj(left),
            "least": report_to_obj(right),
            "difference": polynomial_to_obj(left.interpolant - right.interpolant),
        }
    _emit(dumps(out), args.output)
    return 0


def _extract_polynomial(obj, method: str | None) -> Polynomial:
    if isinstance(obj, dict) and "schaback" in obj and "least" in obj:
        if method is None:
            raise ValueError("this report holds both methods; pick one with --method")
        return polynomial_from_obj(obj[method]["interpolant"])
    if isinstance(obj, dict) and "interpolant" in obj:
        return polynomial_from_obj(obj["interpolant"])
    return polynomial_from_obj(obj)


def _cmd_eval(args) -> int:
    polynomial = _extract_polynomial(_load_json(args.input), args.method)
    points = [_parse_query_point(text) for text in args.at]
    values = [polynomial(p) for p in points]
    out = {
        "points": [[format_rational(c) for c in p] for p in points],
        "values": [format_rational(v) for v in values],
    }
    if args.precision is not None:
        out["decimals"] = [_render_decimal(v, args.precision) for v in values]
    _emit(dumps(out), args.output)
    return 0


def _cmd_expand(args) -> int:
    if args.k < 0 or args.d < 1:
        raise _UsageError("need k >= 0 and d >= 1")
    if args.k > 8 or args.d > 4:
        raise _UsageError("listing guard: k <= 8 and d <= 4")
    reassembled = expansion_polynomial(args.k, args.d)
    # independent reassembly check: expand (sum_i (x_i - y_i)^2)^k directly
    squared_distance = Polynomial(2 * args.d, {})
    for i in range(args.d):
        x = Polynomial.variable(2 * args.d, i)
        y = Polynomial.variable(2 * args.d, args.d + i)
        diff = x - y
        squared_distance = squared_distance + diff * diff
    direct = squared_distance**args.k
    out = {
        "k": args.k,
        "d": args.d,
        "terms": [
            {
                "a": term.a,
                "beta": list(term.beta),
                "c": term.c,
                "coeff": format_rational(term.coeff),
            }
            for term in radial_power_expansion(args.k, args.d)
        ],
        "reassembled": polynomial_to_obj(reassembled),
        "oracle_match": reassembled == direct,
    }
    _emit(dumps(out), args.output)
    return 0 if out["oracle_match"] else 2


def _cmd_verify(args) -> int:
    if args.trials < 1:
        raise _UsageError("need at least one trial")
    report = run_suite(args.suite, args.seed, args.trials, corrupt=args.corrupt)
    _emit(dumps(report.to_obj()), args.output)
    return 0 if report.ok else 3


def _cmd_compare(args) -> int:
    problem = _load_problem(args.input)
    if problem.points is None:
        raise ValueError("compare needs a problem file with 'points'")
    if args.probe_degree < 0:
        raise _UsageError("probe degree must be >= 0")
    report = compare_interpolants(
        list(problem.points), args.probe_degree, _resolve_cap(problem)
    )
    _emit(dumps(comparison_to_obj(report)), args.output)
    return 0


_COMMANDS = {
    "basis": _cmd_basis,
    "interp": _cmd_interp,
    "eval": _cmd_eval,
    "expand": _cmd_expand,
    "verify": _cmd_verify,
    "compare": _cmd_compare,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"radpoly: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"radpoly: {exc}", file=sys.stderr)
        return 1
    except RadpolyError as exc:
        print(f"radpoly: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
