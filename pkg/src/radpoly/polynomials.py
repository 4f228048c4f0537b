"""Exact sparse multivariate polynomials over the rationals.

A polynomial in ``d`` variables is a finite map from exponent vectors
(length-``d`` tuples of nonnegative ints) to nonzero ``Fraction``
coefficients.  The zero polynomial is the empty map; its degree is -1 by
convention, matching the order convention for the zero functional used
elsewhere in the package.

Monomials are enumerated in graded order: total degree first, ties within a
degree broken lexicographically with the first coordinate most significant
and the larger exponent first.  For d=2 through degree 2:

    (0,0) | (1,0), (0,1) | (2,0), (1,1), (0,2)

The tie-break itself is arbitrary, but it must stay fixed and documented:
pivot choices in the graded-basis construction depend on the column order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DimensionMismatchError

Exponent = tuple[int, ...]
Rational = Union[int, str, Fraction]


def as_fraction(value: Rational) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to an exact Fraction.

    Floats are rejected on purpose: everything in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def as_point(coords: Iterable[Rational]) -> tuple[Fraction, ...]:
    """Coerce an iterable of rationals to an exact point."""
    return tuple(as_fraction(c) for c in coords)


def total_degree(alpha: Exponent) -> int:
    return sum(alpha)


def multi_factorial(alpha: Exponent) -> int:
    """alpha! = alpha(1)! * ... * alpha(d)!"""
    out = 1
    for e in alpha:
        out *= math.factorial(e)
    return out


def graded_key(alpha: Exponent):
    """Sort key realizing the canonical graded monomial order."""
    return (sum(alpha), tuple(-e for e in alpha))


def monomials_of_degree(d: int, degree: int, *, ascending_ties: bool = False) -> Iterator[Exponent]:
    """Yield all exponent vectors of the given total degree, in order.

    The default within-degree order is the canonical one (larger first
    coordinate first).  ``ascending_ties`` reverses it, which is used to
    check that pivot-dependent results do not depend on the tie-break.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if degree < 0:
        return
    if d == 1:
        yield (degree,)
        return
    firsts = range(degree + 1) if ascending_ties else range(degree, -1, -1)
    for first in firsts:
        for rest in monomials_of_degree(d - 1, degree - first, ascending_ties=ascending_ties):
            yield (first,) + rest


def monomial_sequence(d: int, max_degree: int, *, ascending_ties: bool = False) -> list[Exponent]:
    """All alpha with |alpha| <= max_degree in graded order."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    out: list[Exponent] = []
    for k in range(max_degree + 1):
        out.extend(monomials_of_degree(d, k, ascending_ties=ascending_ties))
    return out


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_dimension", "_terms", "_degree")

    def __init__(self, dimension: int, terms: Mapping | Iterable = ()):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for alpha, coeff in items:
            key = tuple(int(e) for e in alpha)
            if len(key) != dimension:
                raise DimensionMismatchError(
                    f"exponent {key} does not have length {dimension}"
                )
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            value = as_fraction(coeff)
            if key in clean:
                value = value + clean[key]
            if value == 0:
                clean.pop(key, None)
            else:
                clean[key] = value
        self._dimension = dimension
        self._terms = clean
        self._degree = max((sum(a) for a in clean), default=-1)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dimension: int) -> "Polynomial":
        return cls(dimension)

    @classmethod
    def constant(cls, dimension: int, value: Rational) -> "Polynomial":
        return cls(dimension, {(0,) * dimension: as_fraction(value)})

    @classmethod
    def monomial(cls, dimension: int, alpha: Iterable[int], coeff: Rational = 1) -> "Polynomial":
        return cls(dimension, {tuple(alpha): as_fraction(coeff)})

    @classmethod
    def variable(cls, dimension: int, index: int) -> "Polynomial":
        if not 0 <= index < dimension:
            raise ValueError(f"variable index {index} out of range for dimension {dimension}")
        alpha = [0] * dimension
        alpha[index] = 1
        return cls(dimension, {tuple(alpha): Fraction(1)})

    @classmethod
    def squared_norm(cls, dimension: int) -> "Polynomial":
        """x(1)^2 + ... + x(d)^2."""
        terms = {}
        for i in range(dimension):
            alpha = [0] * dimension
            alpha[i] = 2
            terms[tuple(alpha)] = Fraction(1)
        return cls(dimension, terms)

    # -- inspection ---------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return self._degree

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, alpha: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Term list in graded monomial order."""
        return sorted(self._terms.items(), key=lambda item: graded_key(item[0]))

    def homogeneous_component(self, degree: int) -> "Polynomial":
        return Polynomial(
            self._dimension,
            {a: c for a, c in self._terms.items() if sum(a) == degree},
        )

    def is_homogeneous(self, degree: int | None = None) -> bool:
        if self.is_zero:
            return True
        degrees = {sum(a) for a in self._terms}
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}

    # -- arithmetic ---------------------------------------------------

    def _require_same_dimension(self, other: "Polynomial") -> None:
        if self._dimension != other._dimension:
            raise DimensionMismatchError(
                f"polynomial dimensions differ: {self._dimension} vs {other._dimension}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_dimension(other)
        out = dict(self._terms)
        for alpha, coeff in other._terms.items():
            value = out.get(alpha, Fraction(0)) + coeff
            if value == 0:
                out.pop(alpha, None)
            else:
                out[alpha] = value
        return Polynomial(self._dimension, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self._dimension, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._require_same_dimension(other)
            out: dict[Exponent, Fraction] = {}
            for a1, c1 in self._terms.items():
                for a2, c2 in other._terms.items():
                    key = tuple(e1 + e2 for e1, e2 in zip(a1, a2))
                    value = out.get(key, Fraction(0)) + c1 * c2
                    if value == 0:
                        out.pop(key, None)
                    else:
                        out[key] = value
            return Polynomial(self._dimension, out)
        scalar = as_fraction(other)
        return Polynomial(self._dimension, {a: scalar * c for a, c in self._terms.items()})

    def __rmul__(self, other) -> "Polynomial":
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.constant(self._dimension, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._dimension == other._dimension and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._dimension, frozenset(self._terms.items())))

    # -- evaluation and pairings ---------------------------------------

    def __call__(self, point: Sequence[Rational]) -> Fraction:
        """Exact value at a rational point."""
        coords = as_point(point)
        if len(coords) != self._dimension:
            raise DimensionMismatchError(
                f"point has length {len(coords)}, polynomial dimension is {self._dimension}"
            )
        total = Fraction(0)
        for alpha, coeff in self._terms.items():
            term = coeff
            for x, e in zip(coords, alpha):
                if e:
                    term *= x**e
            total += term
        return total

    def apolar(self, other: "Polynomial") -> Fraction:
        """Formal power-series pairing: sum over alpha of alpha! f_alpha g_alpha.

        Written on coefficients this is the pairing of iterated derivatives
        at the origin, since D^alpha f(0) = alpha! f_alpha.
        """
        if not isinstance(other, Polynomial):
            raise TypeError("apolar pairing needs two polynomials")
        self._require_same_dimension(other)
        small, large = (self, other) if len(self._terms) <= len(other._terms) else (other, self)
        total = Fraction(0)
        for alpha, coeff in small._terms.items():
            mate = large._terms.get(alpha)
            if mate is not None:
                total += multi_factorial(alpha) * coeff * mate
        return total

    def compose_affine(self, matrix: Sequence[Sequence[Rational]],
                       shift: Sequence[Rational] | None = None) -> "Polynomial":
        """Exact expansion of x |-> p(A x + b)."""
        d = self._dimension
        rows = [[as_fraction(v) for v in row] for row in matrix]
        if len(rows) != d or any(len(row) != d for row in rows):
            raise DimensionMismatchError("substitution matrix must be d-by-d")
        offset = [Fraction(0)] * d if shift is None else list(as_point(shift))
        if len(offset) != d:
            raise DimensionMismatchError("shift must have length d")

        substitutions = []
        for i in range(d):
            terms: dict[Exponent, Fraction] = {}
            for j in range(d):
                if rows[i][j]:
                    alpha = [0] * d
                    alpha[j] = 1
                    terms[tuple(alpha)] = rows[i][j]
            if offset[i]:
                terms[(0,) * d] = offset[i]
            substitutions.append(Polynomial(d, terms))

        max_exp = [0] * d
        for alpha in self._terms:
            for i, e in enumerate(alpha):
                if e > max_exp[i]:
                    max_exp[i] = e
        powers: list[list[Polynomial]] = []
        for i in range(d):
            cache = [Polynomial.constant(d, 1)]
            for _ in range(max_exp[i]):
                cache.append(cache[-1] * substitutions[i])
            powers.append(cache)

        out = Polynomial.zero(d)
        for alpha, coeff in self._terms.items():
            term = Polynomial.constant(d, coeff)
            for i, e in enumerate(alpha):
                if e:
                    term = term * powers[i][e]
            out = out + term
        return out

    def translate(self, shift: Sequence[Rational]) -> "Polynomial":
        """x |-> p(x + shift)."""
        d = self._dimension
        identity = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        return self.compose_affine(identity, shift)

    # -- display --------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for alpha, coeff in reversed(self.terms()):
            factors = []
            for i, e in enumerate(alpha):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = f"{abs(coeff)}*" + "*".join(factors)
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial(d={self._dimension}: {self})"
