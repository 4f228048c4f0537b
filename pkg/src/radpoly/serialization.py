"""JSON encoding of the package's values.

One data format for everything: rationals as JSON integers when the
denominator is 1 and as "p/q" strings otherwise (integer strings are also
accepted on input; floats never are).  Term and moment lists are emitted in
graded monomial order, so serialization is deterministic and re-serializing
a parsed document is byte-stable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .functionals import (
    Functional,
    MomentFunctional,
    PointFunctional,
    from_derivative,
    point_evaluation,
)
from .graded import GradedBasis
from .interpolation import ComparisonReport, InterpolantReport
from .polynomials import Polynomial, as_fraction


def format_rational(value: Fraction) -> int | str:
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


_RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(obj: Any) -> Fraction:
    if isinstance(obj, bool) or isinstance(obj, float):
        raise ValueError(f"rationals must be integers or 'p/q' strings, got {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str) and _RATIONAL_PATTERN.match(obj):
        try:
            return as_fraction(obj)
        except ZeroDivisionError as exc:
            raise ValueError(f"bad rational {obj!r}") from exc
    raise ValueError(f"rationals must be integers or 'p/q' strings, got {obj!r}")


def _parse_point(obj: Any) -> tuple[Fraction, ...]:
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"a point must be a nonempty list of rationals, got {obj!r}")
    return tuple(parse_rational(c) for c in obj)


def _parse_alpha(obj: Any) -> tuple[int, ...]:
    if not isinstance(obj, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in obj):
        raise ValueError(f"an exponent vector must be a list of integers, got {obj!r}")
    return tuple(obj)


# ---------------------------------------------------------------------------
# Polynomials


def polynomial_to_obj(p: Polynomial) -> dict:
    return {
        "dimension": p.dimension,
        "terms": [
            {"alpha": list(alpha), "coeff": format_rational(coeff)}
            for alpha, coeff in p.terms()
        ],
    }


def polynomial_from_obj(obj: Any) -> Polynomial:
    if not isinstance(obj, dict) or "dimension" not in obj or "terms" not in obj:
        raise ValueError("a polynomial needs 'dimension' and 'terms'")
    dimension = obj["dimension"]
    if not isinstance(dimension, int) or dimension < 1:
        raise ValueError(f"bad polynomial dimension {dimension!r}")
    terms = []
    for record in obj["terms"]:
        if not isinstance(record, dict):
            raise ValueError("each term must be an object with 'alpha' and 'coeff'")
        terms.append((_parse_alpha(record["alpha"]), parse_rational(record["coeff"])))
    return Polynomial(dimension, terms)


# ---------------------------------------------------------------------------
# Functionals


def functional_to_obj(f: Functional) -> dict:
    if isinstance(f, PointFunctional):
        return {
            "type": "points",
            "points": [[format_rational(c) for c in x] for x in f.points],
            "weights": [format_rational(w) for w in f.weights],
        }
    return {
        "type": "moments",
        "d": f.dimension,
        "cap": f.degree_cap,
        "moments": [
            {"alpha": list(alpha), "value": format_rational(value)}
            for alpha, value in f.moments()
        ],
    }


def functional_from_obj(obj: Any) -> Functional:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("a functional needs a 'type' field")
    kind = obj["type"]
    if kind == "points":
        points = [_parse_point(p) for p in obj["points"]]
        weights = [parse_rational(w) for w in obj["weights"]]
        return PointFunctional(points, weights)
    if kind == "moments":
        d = obj["d"]
        cap = obj["cap"]
        if not isinstance(d, int) or not isinstance(cap, int):
            raise ValueError("'d' and 'cap' must be integers")
        moments = []
        for record in obj.get("moments", []):
            moments.append((_parse_alpha(record["alpha"]), parse_rational(record["value"])))
        return MomentFunctional(d, cap, moments)
    if kind == "derivative":
        alpha = _parse_alpha(obj["alpha"])
        at = _parse_point(obj["at"])
        cap = obj["cap"]
        if not isinstance(cap, int):
            raise ValueError("'cap' must be an integer")
        return from_derivative(alpha, at, cap)
    raise ValueError(f"unknown functional type {kind!r}")


# ---------------------------------------------------------------------------
# Problem files


@dataclass(frozen=True)
class ProblemFile:
    """Parsed CLI input: a span plus optional data or target."""

    dimension: int
    functionals: tuple[Functional, ...]
    points: tuple[tuple[Fraction, ...], ...] | None
    values: tuple[Fraction, ...] | None
    target: Polynomial | None
    degree_cap: int | None


def problem_from_obj(obj: Any) -> ProblemFile:
    if not isinstance(obj, dict):
        raise ValueError("a problem file must be a JSON object")
    dimension = obj.get("dimension")
    if not isinstance(dimension, int) or dimension < 1:
        raise ValueError("'dimension' must be a positive integer")

    points = None
    if "points" in obj and "functionals" in obj:
        raise ValueError("give either 'points' or 'functionals', not both")
    if "points" in obj:
        points = tuple(_parse_point(p) for p in obj["points"])
        if any(len(p) != dimension for p in points):
            raise ValueError("points do not match the declared dimension")
        functionals = tuple(point_evaluation(p) for p in points)
    elif "functionals" in obj:
        functionals = tuple(functional_from_obj(f) for f in obj["functionals"])
        if any(f.dimension != dimension for f in functionals):
            raise ValueError("functionals do not match the declared dimension")
    else:
        raise ValueError("a problem file needs 'points' or 'functionals'")
    if not functionals:
        raise ValueError("need at least one functional")

    values = None
    if "values" in obj:
        values = tuple(parse_rational(v) for v in obj["values"])
        if len(values) != len(functionals):
            raise ValueError(
                f"{len(values)} values for {len(functionals)} functionals"
            )
    target = None
    if "target" in obj:
        target = polynomial_from_obj(obj["target"])
        if target.dimension != dimension:
            raise ValueError("target dimension differs from the problem dimension")
    if values is not None and target is not None:
        raise ValueError("give either 'values' or 'target', not both")

    degree_cap = obj.get("degree_cap")
    if degree_cap is not None and (not isinstance(degree_cap, int) or degree_cap < 0):
        raise ValueError("'degree_cap' must be a nonnegative integer")

    return ProblemFile(
        dimension=dimension,
        functionals=functionals,
        points=points,
        values=values,
        target=target,
        degree_cap=degree_cap,
    )


# ---------------------------------------------------------------------------
# Results


def graded_basis_to_obj(basis: GradedBasis) -> dict:
    return {
        "dimension": basis.dimension,
        "size": basis.size,
        "kappas": list(basis.kappas),
        "pivots": [list(beta) for beta in basis.pivots],
        "transform": [[format_rational(t) for t in row] for row in basis.transform],
        "degree_cap": basis.degree_cap,
        "span": [functional_to_obj(f) for f in basis.span],
        "lambdas": [functional_to_obj(f) for f in basis.lambdas],
    }


def report_to_obj(report: InterpolantReport) -> dict:
    graded = report.basis.source
    return {
        "method": report.method,
        "dimension": graded.dimension,
        "kappas": list(graded.kappas),
        "pivots": [list(beta) for beta in graded.pivots],
        "coefficients": [format_rational(c) for c in report.coefficients],
        "interpolant": polynomial_to_obj(report.interpolant),
        "data": [format_rational(v) for v in report.data],
        "residuals": [format_rational(r) for r in report.residuals],
    }


def comparison_to_obj(report: ComparisonReport) -> dict:
    return {
        "dimension": report.dimension,
        "kappas": list(report.kappas),
        "pivots": [list(beta) for beta in report.pivots],
        "ranges_equal": report.ranges_equal,
        "probe_degree": report.probe_degree,
        "interpolants_agree": report.interpolants_agree,
        "first_difference": (
            None if report.first_difference is None else list(report.first_difference)
        ),
        "four_point_radial_moment": (
            None
            if report.four_point_radial_moment is None
            else format_rational(report.four_point_radial_moment)
        ),
    }


def dumps(obj: Any) -> str:
    """Canonical JSON rendering: two-space indent, trailing newline."""
    return json.dumps(obj, indent=2) + "\n"
