"""Both interpolants: structure, projector laws, comparison, invariances."""

import random
from fractions import Fraction

import pytest

from radpoly import (
    Polynomial,
    SingularGramianError,
    build_graded_basis,
    compare_interpolants,
    flat_projector,
    four_point_radial_moment,
    least_basis,
    least_interpolate,
    point_evaluation,
    polynomial_span_equal,
    range_basis,
    schaback_basis,
    schaback_interpolate,
    span_dimension_below,
)
from radpoly.rational_linalg import determinant, transpose

GRID = [(0, 0), (1, 0), (0, 1), (1, 1)]
SKEW = [(0, 0), (1, 0), (0, 1), (1, 2)]


def graded_on(points, **kwargs):
    return build_graded_basis([point_evaluation(p) for p in points], **kwargs)


def monomial(d, alpha):
    return Polynomial.monomial(d, alpha)


class TestSchabackBasis:
    def test_two_point_line(self):
        sb = schaback_basis(graded_on([(0,), (1,)]))
        assert sb.w[0] == Polynomial.constant(1, 1)
        assert sb.w[1] == Polynomial(1, {(1,): -2, (0,): 1})
        assert [list(row) for row in sb.gramian] == [[1, 1], [0, -2]]

    def test_second_difference_basis_polynomial(self):
        sb = schaback_basis(graded_on([(0,), (1,), (2,)]))
        assert sb.w[2] == Polynomial(1, {(2,): 6, (1,): -12, (0,): 7})

    def test_gridded_degrees_and_top_diagonal(self):
        graded = graded_on(GRID)
        sb = schaback_basis(graded)
        assert tuple(w.degree for w in sb.w) == (0, 1, 1, 2)
        assert sb.gramian[3][3] != 0

    def test_block_triangular_gramian(self):
        graded = graded_on(SKEW)
        sb = schaback_basis(graded)
        for i in range(4):
            for j in range(4):
                if graded.kappas[i] > graded.kappas[j]:
                    assert sb.gramian[i][j] == 0
        for block in graded.blocks():
            diag = [[sb.gramian[i][j] for j in block] for i in block]
            assert determinant(diag) != 0


class TestSchabackInterpolation:
    def test_linear_data_on_two_points(self):
        report = schaback_interpolate(graded_on([(0,), (1,)]), data=[0, 1])
        assert report.interpolant == Polynomial.variable(1, 0)
        assert report.residuals == (0, 0)

    def test_bilinear_reproduction_on_the_grid(self):
        report = schaback_interpolate(graded_on(GRID), data=[0, 0, 0, 1])
        assert report.interpolant == monomial(2, (1, 1))

    def test_quadratic_reproduction_on_three_points(self):
        report = schaback_interpolate(graded_on([(0,), (1,), (2,)]), data=[0, 1, 4])
        assert report.interpolant == monomial(1, (2,))

    def test_target_path_equals_data_path(self):
        graded = graded_on(SKEW)
        target = Polynomial(2, {(2, 0): 1, (1, 1): -3, (0, 0): 2})
        by_target = schaback_interpolate(graded, target=target)
        by_data = schaback_interpolate(graded, data=[target(p) for p in SKEW])
        assert by_target.interpolant == by_data.interpolant
        assert by_target.coefficients == by_data.coefficients

    def test_block_solve_matches_dense_solve(self):
        graded = graded_on([(0, 0), (2, 1), (1, 1), (-1, 3), (0, 5)])
        target = Polynomial(2, {(3, 0): 1, (0, 2): -2})
        block = schaback_interpolate(graded, target=target)
        dense = schaback_interpolate(graded, target=target, solver="dense")
        assert block.coefficients == dense.coefficients

    def test_needs_exactly_one_input(self):
        graded = graded_on([(0,), (1,)])
        with pytest.raises(ValueError):
            schaback_interpolate(graded)
        with pytest.raises(ValueError):
            schaback_interpolate(graded, data=[0, 1], target=Polynomial.zero(1))
        with pytest.raises(ValueError):
            schaback_interpolate(graded, data=[0, 1, 2])

    def test_singular_least_gramian_is_reported(self):
        from radpoly import LeastBasis

        graded = graded_on([(0,), (1,)])
        healthy = least_basis(graded)
        broken = LeastBasis(
            source=graded,
            g=healthy.g,
            gramian=((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))),
        )
        with pytest.raises(SingularGramianError):
            least_interpolate(broken, data=[0, 1])


class TestLeastInterpolation:
    def test_coincides_on_two_points(self):
        report = least_interpolate(graded_on([(0,), (1,)]), data=[0, 1])
        assert report.interpolant == Polynomial.variable(1, 0)

    def test_gridded_product_data(self):
        report = least_interpolate(graded_on(GRID), data=[0, 0, 0, 1])
        assert report.interpolant == monomial(2, (1, 1))

    def test_skew_four_points_differ_but_both_match(self):
        graded = graded_on(SKEW)
        # x1^2 and x1 share the same values on these points, so both methods
        # return x1 for that data; x1*x2 is a probe on which they differ.
        squared = monomial(2, (2, 0))
        assert schaback_interpolate(graded, target=squared).interpolant == monomial(2, (1, 0))
        assert least_interpolate(graded, target=squared).interpolant == monomial(2, (1, 0))
        target = monomial(2, (1, 1))
        left = schaback_interpolate(graded, target=target).interpolant
        right = least_interpolate(graded, target=target).interpolant
        assert left != right
        for p in SKEW:
            assert left(p) == target(p)
            assert right(p) == target(p)

    def test_least_basis_homogeneous(self):
        lb = least_basis(graded_on(SKEW))
        for g, kappa in zip(lb.g, lb.source.kappas):
            assert g.is_homogeneous(kappa)

    def test_derivative_span_reproduces_taylor_data(self):
        from radpoly import from_derivative

        span = [
            from_derivative((0,), (0,), 6),
            from_derivative((1,), (0,), 6),
            from_derivative((2,), (0,), 6),
        ]
        graded = build_graded_basis(span, degree_cap=6)
        target = Polynomial(1, {(2,): 3, (0,): 1})
        for interpolate in (schaback_interpolate, least_interpolate):
            assert interpolate(graded, target=target).interpolant == target

    def test_moment_cap_too_small_for_radial_images(self):
        from radpoly import DegreeCapError, MomentFunctional

        span = [
            MomentFunctional(1, 3, {(0,): 1}),
            MomentFunctional(1, 3, {(1,): 1}),
            MomentFunctional(1, 3, {(2,): 2}),
        ]
        graded = build_graded_basis(span, degree_cap=3)
        # the order-2 member needs moments up to degree 4 for its image
        with pytest.raises(DegreeCapError):
            schaback_basis(graded)

    def test_least_span_depends_only_on_the_functional_space(self):
        points = [(0, 0), (1, 2), (2, 1), (-1, 1), (3, 0)]
        one = least_basis(graded_on(points))
        other = least_basis(build_graded_basis(
            [point_evaluation(p) for p in reversed(points)], ascending_ties=True
        ))
        assert polynomial_span_equal(one.g, other.g)


class TestRangeBasis:
    def test_gridded_range_is_quadratic_extension(self):
        sb = schaback_basis(graded_on(GRID))
        lb = least_basis(sb.source)
        expected = [
            Polynomial.constant(2, 1),
            Polynomial.variable(2, 0),
            Polynomial.variable(2, 1),
            monomial(2, (1, 1)),
        ]
        assert polynomial_span_equal(range_basis(sb), expected)
        assert polynomial_span_equal(range_basis(lb), expected)

    def test_two_points_span_linears(self):
        sb = schaback_basis(graded_on([(0,), (1,)]))
        assert polynomial_span_equal(
            range_basis(sb), [Polynomial.constant(1, 1), Polynomial.variable(1, 0)]
        )

    def test_single_point_span_is_constants(self):
        sb = schaback_basis(graded_on([(7, -2)]))
        assert range_basis(sb) == (Polynomial.constant(2, 1),)


class TestFlatProjector:
    def test_spanning_points_give_identity(self):
        proj = flat_projector([(0, 0), (1, 0), (0, 1)])
        assert proj.is_identity

    def test_diagonal_line(self):
        proj = flat_projector([(0, 0), (1, 1)])
        half = Fraction(1, 2)
        assert proj.linear == ((half, half), (half, half))
        assert proj.shift == (0, 0)

    def test_coordinate_plane(self):
        proj = flat_projector([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
        assert proj.linear == (
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 0),
        )

    def test_idempotent_and_symmetric(self):
        rng = random.Random(13)
        for _ in range(10):
            d = rng.randint(2, 3)
            n = rng.randint(1, d)
            pts = set()
            while len(pts) < n:
                pts.add(tuple(Fraction(rng.randint(-4, 4)) for _ in range(d)))
            proj = flat_projector(list(pts))
            q = [list(row) for row in proj.linear]
            assert q == [list(row) for row in transpose(q)]
            x = tuple(Fraction(rng.randint(-6, 6)) for _ in range(d))
            assert proj(proj(x)) == proj(x)
            for p in pts:
                assert proj(p) == p


class TestComparison:
    def test_gridded_case(self):
        report = compare_interpolants(GRID, probe_degree=3)
        assert report.ranges_equal
        assert report.interpolants_agree
        assert report.four_point_radial_moment == 0

    def test_skew_case(self):
        report = compare_interpolants(SKEW, probe_degree=3)
        assert report.four_point_radial_moment == 2
        assert not report.ranges_equal
        assert not report.interpolants_agree

    def test_collinear_case(self):
        report = compare_interpolants([(0, 0), (1, 1), (2, 2)], probe_degree=3)
        assert report.ranges_equal
        assert report.interpolants_agree

    def test_four_point_diagnostic_guard(self):
        assert four_point_radial_moment([(0, 0), (1, 1)]) is None
        assert four_point_radial_moment([(0, 0), (1, 1), (2, 2), (3, 3)]) is None
        assert four_point_radial_moment([(0, 0, 0)]) is None
        assert four_point_radial_moment([(0, 0), (0, 0), (1, 0), (0, 1)]) is None


class TestProjectorLaws:
    def test_idempotence_interpolation_degree_reduction(self):
        rng = random.Random(23)
        from radpoly import monomial_sequence

        for _ in range(8):
            d = rng.randint(1, 3)
            n = rng.randint(2, 7)
            pts = set()
            while len(pts) < n:
                pts.add(tuple(Fraction(rng.randint(-5, 5)) for _ in range(d)))
            graded = graded_on(list(pts))
            sb = schaback_basis(graded)
            lb = least_basis(graded)
            pool = monomial_sequence(d, 6)
            terms = {alpha: Fraction(rng.randint(-9, 9)) for alpha in rng.sample(pool, 4)}
            target = Polynomial(d, terms)
            for interpolate in (
                lambda t: schaback_interpolate(sb, target=t),
                lambda t: least_interpolate(lb, target=t),
            ):
                report = interpolate(target)
                f = report.interpolant
                assert all(r == 0 for r in report.residuals)
                assert f.degree <= target.degree
                assert interpolate(f).interpolant == f

    def test_minimal_degree_dimension_equality(self):
        rng = random.Random(29)
        for _ in range(8):
            d = rng.randint(1, 3)
            n = rng.randint(2, 7)
            pts = set()
            while len(pts) < n:
                pts.add(tuple(Fraction(rng.randint(-5, 5)) for _ in range(d)))
            graded = graded_on(list(pts))
            sb = schaback_basis(graded)
            lb = least_basis(graded)
            for k in range(max(graded.kappas) + 3):
                tail = sum(1 for kappa in graded.kappas if kappa >= k)
                assert span_dimension_below(sb.w, k) + tail == n
                assert span_dimension_below(lb.g, k) + tail == n


class TestGeneralLinearBehaviour:
    def test_least_range_transforms_by_the_transpose(self):
        shear = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(1)]]
        moved = [tuple(sum(row[j] * Fraction(p[j]) for j in range(2)) for row in shear)
                 for p in SKEW]
        lb_moved = least_basis(graded_on(moved))
        lb = least_basis(graded_on(SKEW))
        composed = [g.compose_affine(transpose(shear)) for g in lb.g]
        assert polynomial_span_equal(lb_moved.g, composed)

    def test_radial_method_violates_the_transformation_law(self):
        from radpoly.verification import schaback_general_linear_counterexample

        witness = schaback_general_linear_counterexample()
        assert witness is not None
        points, matrix = witness
        assert determinant(matrix) != 0
        assert matrix != transpose([list(r) for r in matrix]) or any(
            sum(Fraction(v) ** 2 for v in row) != 1 for row in matrix
        )
