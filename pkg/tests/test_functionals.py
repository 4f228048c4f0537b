"""Functionals, the separated radial expansion, and everything built on it."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from radpoly import (
    DegreeCapError,
    DimensionMismatchError,
    MomentFunctional,
    PointFunctional,
    Polynomial,
    combine,
    expansion_polynomial,
    from_derivative,
    inner_product,
    least_part,
    order,
    point_evaluation,
    radial_image,
    radial_power_expansion,
    tensor_apply_radial,
)

SECOND_DIFFERENCE = PointFunctional([[0], [1], [2]], [1, -2, 1])


def two_set_distance_power(k, d):
    """Oracle: (sum_i (x_i - y_i)^2)^k expanded by repeated multiplication."""
    total = Polynomial(2 * d, {})
    for i in range(d):
        diff = Polynomial.variable(2 * d, i) - Polynomial.variable(2 * d, d + i)
        total = total + diff * diff
    return total**k


class TestApply:
    def test_corner_functional_on_product(self):
        lam = PointFunctional([(1, 1), (1, 0), (0, 1), (0, 0)], [1, -1, -1, 1])
        assert lam(Polynomial.monomial(2, (1, 1))) == 1

    def test_four_point_annihilator_on_squared_norm(self):
        z = (1, 2)
        lam = PointFunctional(
            [z, (1, 0), (0, 1), (0, 0)],
            [1, -z[0], -z[1], z[0] + z[1] - 1],
        )
        # z(1)(z(1)-1) + z(2)(z(2)-1) = 0 + 2
        assert lam(Polynomial.squared_norm(2)) == 2

    def test_zero_polynomial_maps_to_zero(self):
        lam = MomentFunctional(2, 3, {(1, 0): 5})
        assert lam(Polynomial.zero(2)) == 0
        assert SECOND_DIFFERENCE(Polynomial.zero(1)) == 0

    def test_moment_cap_violation_is_an_error(self):
        lam = MomentFunctional(1, 2, {(1,): 1})
        with pytest.raises(DegreeCapError):
            lam(Polynomial.monomial(1, (3,)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            SECOND_DIFFERENCE(Polynomial.squared_norm(2))


class TestPointFunctionalConstruction:
    def test_duplicate_points_rejected(self):
        with pytest.raises(ValueError):
            PointFunctional([[0], [0]], [1, 1])

    def test_zero_weights_dropped(self):
        lam = PointFunctional([[0], [1]], [0, 2])
        assert lam.points == ((Fraction(1),),)

    def test_empty_needs_dimension(self):
        with pytest.raises(ValueError):
            PointFunctional([], [])
        assert PointFunctional([], [], dimension=2).is_zero


class TestFromDerivative:
    def test_first_derivative_at_origin(self):
        lam = from_derivative((1,), (0,), 3)
        assert [lam.moment((g,)) for g in range(4)] == [0, 1, 0, 0]

    def test_second_derivative_at_origin(self):
        lam = from_derivative((2,), (0,), 4)
        assert lam.moment((2,)) == 2
        assert all(lam.moment((g,)) == 0 for g in range(5) if g != 2)

    def test_partial_at_shifted_point(self):
        lam = from_derivative((1, 0), (1, 1), 2)
        assert lam.moment((1, 1)) == 1
        assert lam.moment((2, 0)) == 2

    def test_cap_below_derivative_order_rejected(self):
        with pytest.raises(ValueError):
            from_derivative((2, 1), (0, 0), 2)


class TestOrder:
    def test_second_difference(self):
        assert order(SECOND_DIFFERENCE) == 2

    def test_point_mass(self):
        assert order(point_evaluation((5, -3))) == 0

    def test_zero_functional(self):
        assert order(PointFunctional([], [], dimension=1)) == -1
        assert order(MomentFunctional(2, 4, {})) == -1

    def test_cap_outcome_is_a_value(self):
        assert order(SECOND_DIFFERENCE, search_cap=1) is None
        moment = MomentFunctional(1, 5, {(4,): 1})
        assert order(moment, search_cap=2) is None
        assert order(moment) == 4

    def test_search_cap_beyond_stored_moments_rejected(self):
        moment = MomentFunctional(1, 3, {(1,): 1})
        with pytest.raises(DegreeCapError):
            order(moment, search_cap=5)

    def test_derivative_order_is_total_order(self):
        assert order(from_derivative((2, 1), (3, -2), 6)) == 3


class TestRadialPowerExpansion:
    def test_univariate_k1(self):
        terms = radial_power_expansion(1, 1)
        seen = [(t.a, t.beta, t.c, t.coeff) for t in terms]
        assert seen == [
            (1, (0,), 0, Fraction(1)),
            (0, (1,), 0, Fraction(-2)),
            (0, (0,), 1, Fraction(1)),
        ]

    def test_k0_is_the_constant_one(self):
        for d in (1, 2, 3):
            terms = radial_power_expansion(0, d)
            assert len(terms) == 1
            assert terms[0].coeff == 1
            assert expansion_polynomial(0, d) == Polynomial.constant(2 * d, 1)

    def test_k2_d2_has_ten_terms_and_matches_oracle(self):
        assert len(radial_power_expansion(2, 2)) == 10
        assert expansion_polynomial(2, 2) == two_set_distance_power(2, 2)

    def test_term_degrees_sum_to_k(self):
        for term in radial_power_expansion(3, 2):
            assert term.a + sum(term.beta) + term.c == 3

    def test_expansion_matches_oracle_through_k4_d3(self):
        for d in (1, 2, 3):
            for k in range(5):
                assert expansion_polynomial(k, d) == two_set_distance_power(k, d)


class TestTensorApply:
    def test_second_difference_k2(self):
        assert tensor_apply_radial(SECOND_DIFFERENCE, SECOND_DIFFERENCE, 2) == 24

    def test_second_difference_k1_vanishes(self):
        assert tensor_apply_radial(SECOND_DIFFERENCE, SECOND_DIFFERENCE, 1) == 0

    def test_single_point_vanishes_for_positive_k(self):
        lam = point_evaluation((2, 7))
        for k in (1, 2, 3):
            assert tensor_apply_radial(lam, lam, k) == 0

    def test_agrees_with_double_sum_on_random_pairs(self):
        rng = random.Random(42)
        for _ in range(25):
            d = rng.randint(1, 3)
            def draw():
                n = rng.randint(1, 4)
                pts = set()
                while len(pts) < n:
                    pts.add(tuple(Fraction(rng.randint(-5, 5)) for _ in range(d)))
                return PointFunctional(list(pts), [Fraction(rng.randint(-9, 9)) for _ in pts])
            lam, mu = draw(), draw()
            for k in range(4):
                direct = sum(
                    (
                        w * v * sum((a - b) ** 2 for a, b in zip(x, y)) ** k
                        for x, w in zip(lam.points, lam.weights)
                        for y, v in zip(mu.points, mu.weights)
                    ),
                    Fraction(0),
                )
                assert tensor_apply_radial(lam, mu, k) == direct

    def test_moment_cap_must_cover_2k(self):
        lam = MomentFunctional(1, 3, {(2,): 1})
        with pytest.raises(DegreeCapError):
            tensor_apply_radial(lam, lam, 2)


class TestInnerProduct:
    def test_sign_adjusted_values(self):
        assert inner_product(SECOND_DIFFERENCE, SECOND_DIFFERENCE, 2) == 24
        assert inner_product(SECOND_DIFFERENCE, SECOND_DIFFERENCE, 1) == 0

    def test_first_difference_k1(self):
        lam = PointFunctional([[1], [0]], [1, -1])
        assert inner_product(lam, lam, 1) == 2

    def test_symmetric_and_bilinear(self):
        rng = random.Random(5)
        for _ in range(10):
            d = rng.randint(1, 2)
            pts = [tuple(Fraction(rng.randint(-3, 3)) for _ in range(d)) for _ in range(6)]
            pts = list(dict.fromkeys(pts))
            lam = PointFunctional(pts[:2], [1, -2])
            mu = PointFunctional(pts[2:4] if len(pts) >= 4 else pts[:2], [3, 1])
            nu = point_evaluation(pts[0])
            for k in (1, 2):
                assert inner_product(lam, mu, k) == inner_product(mu, lam, k)
                combo = combine([mu, nu], [Fraction(2), Fraction(-3)])
                assert inner_product(lam, combo, k) == 2 * inner_product(
                    lam, mu, k
                ) - 3 * inner_product(lam, nu, k)


class TestRadialImage:
    def test_point_mass_is_shifted_squared_norm(self):
        y = (Fraction(2), Fraction(-1))
        image = radial_image(point_evaluation(y), 1)
        expected = Polynomial(
            2, {(2, 0): 1, (0, 2): 1, (1, 0): -2 * y[0], (0, 1): -2 * y[1], (0, 0): 5}
        )
        assert image == expected

    def test_second_difference_at_its_order(self):
        assert radial_image(SECOND_DIFFERENCE, 2) == Polynomial(
            1, {(2,): 12, (1,): -24, (0,): 14}
        )

    def test_zero_functional_has_zero_image(self):
        assert radial_image(PointFunctional([], [], dimension=2), 3).is_zero

    def test_slot_consistency_at_rational_points(self):
        rng = random.Random(11)
        for _ in range(10):
            d = rng.randint(1, 2)
            pts = set()
            while len(pts) < 3:
                pts.add(tuple(Fraction(rng.randint(-4, 4)) for _ in range(d)))
            lam = PointFunctional(list(pts), [Fraction(rng.randint(-5, 5)) for _ in range(3)])
            x = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(d))
            for ell in (1, 2):
                in_y = Polynomial(d, {})
                for i in range(d):
                    diff = Polynomial.constant(d, x[i]) - Polynomial.variable(d, i)
                    in_y = in_y + diff * diff
                assert radial_image(lam, ell)(x) == lam(in_y**ell)

    def test_degree_drops_by_the_order(self):
        # order 2, exponent 3: degree 2*3 - 2 = 4
        assert radial_image(SECOND_DIFFERENCE, 3).degree == 4

    def test_vanishes_below_half_the_order(self):
        assert radial_image(SECOND_DIFFERENCE, 0).is_zero


class TestLeastPart:
    def test_second_difference(self):
        assert least_part(SECOND_DIFFERENCE) == Polynomial.monomial(1, (2,))

    def test_point_mass_is_the_constant_one(self):
        assert least_part(point_evaluation((4, 4))) == Polynomial.constant(2, 1)

    def test_corner_functional(self):
        lam = PointFunctional([(1, 1), (1, 0), (0, 1), (0, 0)], [1, -1, -1, 1])
        assert least_part(lam) == Polynomial.monomial(2, (1, 1))

    def test_zero_functional(self):
        assert least_part(PointFunctional([], [], dimension=3)).is_zero

    def test_order_beyond_cap_is_an_error(self):
        with pytest.raises(DegreeCapError):
            least_part(SECOND_DIFFERENCE, search_cap=1)

    def test_homogeneous_of_the_order_degree(self):
        rng = random.Random(3)
        for _ in range(10):
            d = rng.randint(1, 3)
            pts = set()
            while len(pts) < 4:
                pts.add(tuple(Fraction(rng.randint(-4, 4)) for _ in range(d)))
            lam = PointFunctional(list(pts), [rng.randint(-5, 5) for _ in range(4)])
            kappa = order(lam)
            part = least_part(lam)
            if kappa == -1:
                assert part.is_zero
            else:
                assert part.is_homogeneous(kappa)
                assert part.degree == kappa


class TestCombine:
    def test_point_combination_merges_support(self):
        lam = combine(
            [point_evaluation((0,)), point_evaluation((1,)), point_evaluation((0,))],
            [1, 2, -1],
        )
        assert lam == PointFunctional([(1,)], [2])

    def test_mixed_combination_truncates_to_smallest_cap(self):
        lam = combine([point_evaluation((1,)), MomentFunctional(1, 2, {(2,): 1})], [1, 3])
        assert isinstance(lam, MomentFunctional)
        assert lam.degree_cap == 2
        assert lam.moment((2,)) == 1 + 3
        assert lam.moment((0,)) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            combine([point_evaluation((0,)), point_evaluation((0, 0))], [1, 1])


@st.composite
def _point_functional_pair(draw):
    d = draw(st.integers(1, 3))
    def one():
        n = draw(st.integers(1, 4))
        points = []
        seen = set()
        while len(points) < n:
            p = tuple(draw(st.integers(-4, 4)) for _ in range(d))
            if p not in seen:
                seen.add(p)
                points.append(p)
        return PointFunctional(points, [draw(st.integers(-6, 6)) for _ in range(n)],
                               dimension=d)
    return one(), one()


@given(_point_functional_pair(), st.integers(0, 3))
@settings(deadline=None, max_examples=60)
def test_tensor_application_symmetric_in_its_arguments(pair, k):
    lam, mu = pair
    assert tensor_apply_radial(lam, mu, k) == tensor_apply_radial(mu, lam, k)
    assert inner_product(lam, mu, k) == (-1) ** k * tensor_apply_radial(lam, mu, k)


@given(_point_functional_pair(), st.integers(0, 2), st.integers(-4, 4))
@settings(deadline=None, max_examples=60)
def test_tensor_application_linear_in_each_slot(pair, k, scale):
    lam, mu = pair
    stretched = combine([mu], [scale])
    assert tensor_apply_radial(lam, stretched, k) == scale * tensor_apply_radial(lam, mu, k)


@given(_point_functional_pair())
@settings(deadline=None, max_examples=60)
def test_least_part_degree_equals_order(pair):
    lam, _ = pair
    kappa = order(lam)
    part = least_part(lam)
    if kappa == -1:
        assert part.is_zero
    else:
        assert part.degree == kappa
        assert part.is_homogeneous(kappa)


class TestQuadraticFormCharacterization:
    """Sign and vanishing of the diagonal form, driven by the order."""

    def test_sign_and_equality_for_seeded_functionals(self):
        rng = random.Random(17)
        from radpoly import build_graded_basis

        for _ in range(15):
            d = rng.randint(1, 3)
            pts = set()
            while len(pts) < rng.randint(2, 6):
                pts.add(tuple(Fraction(rng.randint(-5, 5)) for _ in range(d)))
            graded = build_graded_basis([point_evaluation(p) for p in pts])
            for lam, kappa in zip(graded.lambdas, graded.kappas):
                for k in (1, 2, 3):
                    if kappa < k:
                        continue
                    q = tensor_apply_radial(lam, lam, k)
                    assert (-1) ** k * q >= 0
                    assert (q == 0) == (kappa >= k + 1)
                for k in (0, 1, 2):
                    vanish = all(
                        tensor_apply_radial(lam, lam, r) == 0 for r in range(k + 1)
                    )
                    assert vanish == (kappa >= k + 1)
