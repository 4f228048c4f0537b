"""Linear functionals on polynomials, with exactly computable moments.

Two concrete representations share one informal interface (``dimension``,
``moment``, ``degree_cap``, ``is_zero``, and application by calling):

* ``PointFunctional`` -- a weighted combination of point evaluations,
  p |-> sum_i c_i p(x_i), applicable to polynomials of any degree.
* ``MomentFunctional`` -- a finite table of moments lambda(x^alpha) for
  |alpha| up to a declared degree cap.  Applying it past the cap raises,
  never silently truncates: silent truncation would corrupt the
  exact-identity checks built on top of these objects.

The workhorse identity separates the even radial power into products of
one-sided terms.  With p_{a,beta}(x) = ||x||^(2a) x^beta,

    ||x - y||^(2k) = sum over a + |beta| + c = k of
        (-2)^|beta| * k! / (a! beta! c!) * p_{a,beta}(x) * p_{c,beta}(y),

where ||.|| is the Euclidean norm.  Tensor application of two functionals
to ||x-y||^(2k), the degree-k bilinear form built from it, radial images
x |-> lambda ||x - .||^(2l), and lowest-degree parts of the moment series
are all computed exactly through this expansion.

The order of a functional is the smallest total degree carrying a nonzero
moment (equivalently, the largest k with lambda vanishing on all polynomials
of degree < k); the zero functional has order -1 by convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .errors import DegreeCapError, DimensionMismatchError
from .polynomials import (
    Exponent,
    Polynomial,
    Rational,
    as_fraction,
    as_point,
    graded_key,
    monomial_sequence,
    monomials_of_degree,
    multi_factorial,
)


class PointFunctional:
    """Weighted combination of evaluations at pairwise distinct points."""

    __slots__ = ("_dimension", "_points", "_weights")

    def __init__(self, points: Iterable[Sequence[Rational]], weights: Iterable[Rational],
                 *, dimension: int | None = None):
        pts = [as_point(p) for p in points]
        wts = [as_fraction(w) for w in weights]
        if len(pts) != len(wts):
            raise ValueError("points and weights must have equal length")
        if pts:
            d = len(pts[0])
            if dimension is not None and dimension != d:
                raise DimensionMismatchError(
                    f"declared dimension {dimension} but points have length {d}"
                )
        else:
            if dimension is None:
                raise ValueError("dimension is required for an empty combination")
            d = dimension
        if d < 1:
            raise ValueError("dimension must be >= 1")
        if any(len(p) != d for p in pts):
            raise DimensionMismatchError("points of mixed dimension")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        kept = [(p, w) for p, w in zip(pts, wts) if w != 0]
        self._dimension = d
        self._points = tuple(p for p, _ in kept)
        self._weights = tuple(w for _, w in kept)

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def points(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._points

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return self._weights

    @property
    def is_zero(self) -> bool:
        return not self._weights

    @property
    def degree_cap(self) -> None:
        """Point combinations apply to polynomials of any degree."""
        return None

    def moment(self, alpha: Iterable[int]) -> Fraction:
        key = tuple(alpha)
        if len(key) != self._dimension:
            raise DimensionMismatchError("moment index has wrong length")
        total = Fraction(0)
        for x, w in zip(self._points, self._weights):
            value = w
            for c, e in zip(x, key):
                if e:
                    value *= c**e
            total += value
        return total

    def __call__(self, p: Polynomial) -> Fraction:
        if p.dimension != self._dimension:
            raise DimensionMismatchError("functional and polynomial dimensions differ")
        return sum((w * p(x) for x, w in zip(self._points, self._weights)), Fraction(0))

    def to_moment_functional(self, degree_cap: int) -> "MomentFunctional":
        """Truncated moment table of this combination, up to the cap."""
        moments = {}
        for alpha in monomial_sequence(self._dimension, degree_cap):
            value = self.moment(alpha)
            if value:
                moments[alpha] = value
        return MomentFunctional(self._dimension, degree_cap, moments)

    def _as_dict(self) -> dict[tuple[Fraction, ...], Fraction]:
        return dict(zip(self._points, self._weights))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointFunctional):
            return NotImplemented
        return self._dimension == other._dimension and self._as_dict() == other._as_dict()

    def __hash__(self) -> int:
        return hash((self._dimension, frozenset(self._as_dict().items())))

    def __repr__(self) -> str:
        parts = " ".join(f"{w}@{tuple(map(str, x))}" for x, w in zip(self._points, self._weights))
        return f"PointFunctional({parts or '0'})"


class MomentFunctional:
    """Functional given by its moments lambda(x^alpha) up to a degree cap."""

    __slots__ = ("_dimension", "_degree_cap", "_moments")

    def __init__(self, dimension: int, degree_cap: int,
                 moments: Mapping | Iterable = ()):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        if degree_cap < 0:
            raise ValueError("degree cap must be >= 0")
        items = moments.items() if isinstance(moments, Mapping) else moments
        clean: dict[Exponent, Fraction] = {}
        for alpha, value in items:
            key = tuple(int(e) for e in alpha)
            if len(key) != dimension:
                raise DimensionMismatchError("moment index has wrong length")
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            if sum(key) > degree_cap:
                raise DegreeCapError(
                    f"moment for degree {sum(key)} exceeds the declared cap {degree_cap}"
                )
            v = as_fraction(value)
            if key in clean:
                v = v + clean[key]
            if v == 0:
                clean.pop(key, None)
            else:
                clean[key] = v
        self._dimension = dimension
        self._degree_cap = degree_cap
        self._moments = clean

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def degree_cap(self) -> int:
        return self._degree_cap

    @property
    def is_zero(self) -> bool:
        """True when every stored moment vanishes.

        The object carries no information beyond its moment table, so an
        all-zero table is the zero functional of its domain.
        """
        return not self._moments

    def moments(self) -> list[tuple[Exponent, Fraction]]:
        """Nonzero moments in graded order."""
        return sorted(self._moments.items(), key=lambda item: graded_key(item[0]))

    def moment(self, alpha: Iterable[int]) -> Fraction:
        key = tuple(alpha)
        if len(key) != self._dimension:
            raise DimensionMismatchError("moment index has wrong length")
        if sum(key) > self._degree_cap:
            raise DegreeCapError(
                f"moment of degree {sum(key)} requested, cap is {self._degree_cap}"
            )
        return self._moments.get(key, Fraction(0))

    def __call__(self, p: Polynomial) -> Fraction:
        if p.dimension != self._dimension:
            raise DimensionMismatchError("functional and polynomial dimensions differ")
        if p.degree > self._degree_cap:
            raise DegreeCapError(
                f"polynomial of degree {p.degree} applied to a functional capped at "
                f"{self._degree_cap}"
            )
        total = Fraction(0)
        for alpha, coeff in p.terms():
            value = self._moments.get(alpha)
            if value is not None:
                total += coeff * value
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, MomentFunctional):
            return NotImplemented
        return (
            self._dimension == other._dimension
            and self._degree_cap == other._degree_cap
            and self._moments == other._moments
        )

    def __hash__(self) -> int:
        return hash((self._dimension, self._degree_cap, frozenset(self._moments.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}:{v}" for a, v in self.moments())
        return f"MomentFunctional(cap={self._degree_cap}, {{{body}}})"


Functional = Union[PointFunctional, MomentFunctional]


def point_evaluation(point: Sequence[Rational]) -> PointFunctional:
    """The evaluation functional p |-> p(x)."""
    return PointFunctional([point], [1])


def from_derivative(alpha: Iterable[int], at: Sequence[Rational],
                    degree_cap: int) -> MomentFunctional:
    """Moment table of p |-> (D^alpha p)(x0), stored up to ``degree_cap``."""
    key = tuple(int(e) for e in alpha)
    x0 = as_point(at)
    if len(key) != len(x0):
        raise DimensionMismatchError("derivative index and base point lengths differ")
    if any(e < 0 for e in key):
        raise ValueError("derivative orders must be nonnegative")
    if degree_cap < sum(key):
        raise ValueError("degree cap must be at least the derivative's total order")
    d = len(key)
    moments = {}
    for gamma in monomial_sequence(d, degree_cap):
        value = Fraction(1)
        for g, a, c in zip(gamma, key, x0):
            if g < a:
                value = Fraction(0)
                break
            value *= Fraction(math.factorial(g), math.factorial(g - a))
            if g > a:
                value *= c ** (g - a)
        if value:
            moments[gamma] = value
    return MomentFunctional(d, degree_cap, moments)


def order(functional: Functional, search_cap: int | None = None) -> int | None:
    """Smallest total degree with a nonzero moment.

    Returns -1 for the zero functional.  Returns None when every moment up
    to the search cap vanishes but the functional is not structurally zero;
    the order is then not determined by the inspected moments.  For point
    combinations the default cap is n-1 (n support points), which always
    suffices since evaluations at n distinct points are independent on
    polynomials of degree <= n-1.
    """
    if functional.is_zero:
        return -1
    if isinstance(functional, MomentFunctional):
        cap = functional.degree_cap if search_cap is None else search_cap
        if cap > functional.degree_cap:
            raise DegreeCapError(
                f"search cap {cap} exceeds the stored moment cap {functional.degree_cap}"
            )
    else:
        cap = len(functional.points) - 1 if search_cap is None else search_cap
    for k in range(cap + 1):
        for alpha in monomials_of_degree(functional.dimension, k):
            if functional.moment(alpha) != 0:
                return k
    return None


def combine(functionals: Sequence[Functional], coefficients: Sequence[Rational]) -> Functional:
    """Exact linear combination sum_i c_i lambda_i.

    All point combinations stay a point combination; any moment member
    forces a moment result truncated at the smallest cap involved.
    """
    fs = list(functionals)
    cs = [as_fraction(c) for c in coefficients]
    if not fs or len(fs) != len(cs):
        raise ValueError("need equally many functionals and coefficients, at least one")
    d = fs[0].dimension
    if any(f.dimension != d for f in fs):
        raise DimensionMismatchError("functionals of mixed dimension")
    if all(isinstance(f, PointFunctional) for f in fs):
        acc: dict[tuple[Fraction, ...], Fraction] = {}
        for f, c in zip(fs, cs):
            if c == 0:
                continue
            for x, w in zip(f.points, f.weights):
                acc[x] = acc.get(x, Fraction(0)) + c * w
        return PointFunctional(list(acc.keys()), list(acc.values()), dimension=d)
    cap = min(f.degree_cap for f in fs if isinstance(f, MomentFunctional))
    moments: dict[Exponent, Fraction] = {}
    for f, c in zip(fs, cs):
        if c == 0:
            continue
        if isinstance(f, PointFunctional):
            source = f.to_moment_functional(cap).moments()
        else:
            source = [(a, v) for a, v in f.moments() if sum(a) <= cap]
        for alpha, value in source:
            moments[alpha] = moments.get(alpha, Fraction(0)) + c * value
    return MomentFunctional(d, cap, moments)


@dataclass(frozen=True)
class RadialExpansionTerm:
    """One summand of the separated expansion of ||x-y||^(2k).

    Contributes coeff * p_{a,beta}(x) * p_{c,beta}(y) with a + |beta| + c = k
    and coeff = (-2)^|beta| k! / (a! beta! c!).
    """

    a: int
    beta: Exponent
    c: int
    coeff: Fraction


@lru_cache(maxsize=None)
def radial_power_expansion(k: int, d: int) -> tuple[RadialExpansionTerm, ...]:
    """All separated terms of ||x-y||^(2k) in dimension d.

    Cached per (k, d); the returned tuple and its members are immutable.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    k_factorial = math.factorial(k)
    terms = []
    for a in range(k, -1, -1):
        for b in range(k - a, -1, -1):
            c = k - a - b
            for beta in monomials_of_degree(d, b):
                coeff = Fraction(
                    (-2) ** b * k_factorial,
                    math.factorial(a) * multi_factorial(beta) * math.factorial(c),
                )
                terms.append(RadialExpansionTerm(a, beta, c, coeff))
    return tuple(terms)


@lru_cache(maxsize=None)
def radial_monomial(d: int, a: int, beta: Exponent) -> Polynomial:
    """p_{a,beta} = ||x||^(2a) x^beta, homogeneous of degree 2a + |beta|."""
    return Polynomial.squared_norm(d) ** a * Polynomial.monomial(d, beta)


def expansion_polynomial(k: int, d: int) -> Polynomial:
    """The reassembled expansion as one polynomial in 2d variables (x, y).

    Variables 1..d are the x block and d+1..2d the y block; the result must
    equal the direct expansion of (sum_i (x_i - y_i)^2)^k.
    """
    acc: dict[Exponent, Fraction] = {}
    for term in radial_power_expansion(k, d):
        px = radial_monomial(d, term.a, term.beta)
        py = radial_monomial(d, term.c, term.beta)
        for ax, cx in px.terms():
            for ay, cy in py.terms():
                key = ax + ay
                value = acc.get(key, Fraction(0)) + term.coeff * cx * cy
                if value == 0:
                    acc.pop(key, None)
                else:
                    acc[key] = value
    return Polynomial(2 * d, acc)


def _require_moment_cap(functional: Functional, needed: int, operation: str) -> None:
    cap = functional.degree_cap
    if cap is not None and cap < needed:
        raise DegreeCapError(
            f"{operation} needs moments up to degree {needed}, functional cap is {cap}"
        )


def tensor_apply_radial(lam: Functional, mu: Functional, k: int) -> Fraction:
    """(lambda (x) mu) applied to ||x-y||^(2k), lambda in x and mu in y.

    For point combinations this equals the double sum
    sum_i sum_j c_i c'_j ||x_i - x'_j||^(2k).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if lam.dimension != mu.dimension:
        raise DimensionMismatchError("functionals of different dimension")
    d = lam.dimension
    _require_moment_cap(lam, 2 * k, "tensor application")
    _require_moment_cap(mu, 2 * k, "tensor application")
    total = Fraction(0)
    for term in radial_power_expansion(k, d):
        left = lam(radial_monomial(d, term.a, term.beta))
        if left == 0:
            continue
        right = mu(radial_monomial(d, term.c, term.beta))
        if right == 0:
            continue
        total += term.coeff * left * right
    return total


def inner_product(lam: Functional, mu: Functional, k: int) -> Fraction:
    """(-1)^k (lambda (x) mu) ||x-y||^(2k).

    Symmetric and bilinear; positive semidefinite on functionals of order
    >= k, and definite modulo those of order >= k+1.
    """
    return (-1) ** k * tensor_apply_radial(lam, mu, k)


def radial_image(lam: Functional, ell: int) -> Polynomial:
    """The polynomial x |-> lambda ||x - .||^(2 ell), lambda applied in y.

    For a nonzero functional of order kappa the degree is exactly
    2 ell - kappa when kappa <= 2 ell, and the image vanishes identically
    when kappa > 2 ell.
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")
    d = lam.dimension
    _require_moment_cap(lam, 2 * ell, "radial image")
    acc: dict[Exponent, Fraction] = {}
    for term in radial_power_expansion(ell, d):
        value = lam(radial_monomial(d, term.c, term.beta))
        if value == 0:
            continue
        scale = term.coeff * value
        for alpha, coeff in radial_monomial(d, term.a, term.beta).terms():
            current = acc.get(alpha, Fraction(0)) + scale * coeff
            if current == 0:
                acc.pop(alpha, None)
            else:
                acc[alpha] = current
    return Polynomial(d, acc)


def least_part(lam: Functional, search_cap: int | None = None) -> Polynomial:
    """Lowest-degree nonzero homogeneous part of the moment series.

    With kappa the order of the functional, returns
    sum over |alpha| = kappa of lambda(x^alpha) x^alpha / alpha!,
    and the zero polynomial for the zero functional.
    """
    kappa = order(lam, search_cap)
    if kappa == -1:
        return Polynomial.zero(lam.dimension)
    if kappa is None:
        raise DegreeCapError("order not determined within the search cap")
    d = lam.dimension
    terms = {}
    for alpha in monomials_of_degree(d, kappa):
        value = lam.moment(alpha)
        if value:
            terms[alpha] = value / multi_factorial(alpha)
    return Polynomial(d, terms)
