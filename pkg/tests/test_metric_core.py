"""Exact path-metric primitives: polylines, speed profiles, sup distance."""

from fractions import Fraction

import pytest

from geoplan.metric_core import (
    APPROX_DIGITS,
    Polyline,
    chord_sq_lengths,
    dist_sq,
    is_geodesic,
    path_length,
    reparametrize_constant_speed,
    speed_profile,
    sqrt_approx,
    sqrt_diff_within,
    sqrt_exact,
    sqrt_leq_sqrt_sum,
    sqrt_within,
    sup_distance_sq,
)

F = Fraction


class TestPolyline:
    def test_default_params_are_uniform(self):
        p = Polyline([(0, 0), (1, 0), (1, 1)])
        assert p.params == (F(0), F(1, 2), F(1))

    def test_params_must_span_unit_interval(self):
        with pytest.raises(ValueError):
            Polyline([(0,), (1,)], params=[F(0), F(1, 2)])
        with pytest.raises(ValueError):
            Polyline([(0,), (1,), (2,)], params=[F(0), F(0), F(1)])

    def test_rejects_repeated_interior_vertex(self):
        with pytest.raises(ValueError):
            Polyline([(0, 0), (0, 0), (1, 1)])

    def test_constant_path_is_allowed(self):
        p = Polyline([(F(1, 3), F(2, 3)), (F(1, 3), F(2, 3))])
        assert p.is_constant
        assert path_length(p) == 0

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            Polyline([(0.0, 0.0), (1.0, 1.0)])

    def test_evaluate_is_exact_interpolation(self):
        p = Polyline([(0, 0), (2, 0), (2, 2)], params=[0, F(1, 4), 1])
        assert p.evaluate(F(1, 8)) == (F(1), F(0))
        assert p.evaluate(F(1, 4)) == (F(2), F(0))
        assert p.evaluate(F(5, 8)) == (F(2), F(1))
        assert p.evaluate(1) == (F(2), F(2))


class TestSpeedProfile:
    def test_rational_ratio_chords_are_exact(self):
        p = Polyline([(0, 0), (3, 0), (3, 4)])
        profile = speed_profile(p)
        assert profile.exact
        assert profile.values == (F(0), F(3, 7), F(1))

    def test_collinear_is_always_exact(self):
        p = Polyline([(0, 0), (1, 1), (3, 3)])
        profile = speed_profile(p)
        assert profile.exact
        assert profile.values == (F(0), F(1, 3), F(1))

    def test_irrational_ratio_falls_back_to_approximation(self):
        p = Polyline([(0, 0), (1, 0), (2, 1)])
        profile = speed_profile(p)
        assert not profile.exact
        total = 1 + sqrt_approx(F(2))
        expected = 1 / total
        assert abs(profile.values[1] - expected) < F(1, 10 ** (APPROX_DIGITS - 2))

    def test_reparametrization_uses_length_fractions(self):
        p = Polyline([(0, 0), (3, 0), (3, 4)], params=[0, F(1, 2), 1])
        q = reparametrize_constant_speed(p)
        assert q.vertices == p.vertices
        assert q.params == (F(0), F(3, 7), F(1))

    def test_reparametrization_is_idempotent(self):
        p = Polyline([(0, 0), (3, 0), (3, 4)])
        q = reparametrize_constant_speed(p)
        assert reparametrize_constant_speed(q).params == q.params


class TestGeodesicPredicate:
    def test_straight_segment_passes_exactly(self):
        p = Polyline([(0, 0), (F(1, 3), F(2, 5))])
        assert is_geodesic(p, samples=16, tol=0)

    def test_constant_speed_collinear_passes(self):
        p = Polyline([(0, 0), (1, 1), (3, 3)], params=[0, F(1, 3), 1])
        assert is_geodesic(p, samples=8, tol=0)

    def test_bent_path_fails(self):
        p = Polyline([(0, 0), (3, 0), (3, 4)])
        assert not is_geodesic(p, samples=8, tol=0)

    def test_uneven_parametrization_fails(self):
        p = Polyline([(0, 0), (1, 1), (2, 2)], params=[0, F(1, 4), 1])
        assert not is_geodesic(p, samples=8, tol=0)


class TestSupDistance:
    def test_zero_on_equal_paths(self):
        p = Polyline([(0, 0), (1, 1)])
        assert sup_distance_sq(p, p) == 0

    def test_diverging_segments(self):
        a = Polyline([(0, 0), (1, 0)])
        b = Polyline([(0, 0), (1, 1)])
        assert sup_distance_sq(a, b) == 1

    def test_merged_breakpoints_catch_interior_maximum(self):
        a = Polyline([(0, 0), (1, 0)])
        b = Polyline([(0, 0), (F(1, 2), F(1, 2)), (1, 0)])
        assert sup_distance_sq(a, b) == F(1, 4)

    def test_symmetry(self):
        a = Polyline([(0, 0), (1, 0)])
        b = Polyline([(0, F(1, 3)), (1, F(1, 5))])
        assert sup_distance_sq(a, b) == sup_distance_sq(b, a)

    def test_extra_samples_never_lower_the_sup(self):
        a = Polyline([(0, 0), (1, 0)])
        b = Polyline([(0, 0), (F(1, 3), F(1, 2)), (1, 0)])
        coarse = sup_distance_sq(a, b)
        fine = sup_distance_sq(a, b, samples=64)
        assert fine >= coarse


class TestSquareRoots:
    def test_sqrt_exact_on_perfect_square(self):
        assert sqrt_exact(F(4, 9)) == F(2, 3)
        assert sqrt_exact(F(0)) == 0

    def test_sqrt_exact_none_on_irrational(self):
        assert sqrt_exact(F(2)) is None
        assert sqrt_exact(F(1, 2)) is None

    def test_sqrt_approx_precision(self):
        r = sqrt_approx(F(2))
        assert abs(r * r - 2) < F(1, 10 ** (APPROX_DIGITS - 2))

    def test_sqrt_diff_within(self):
        assert sqrt_diff_within(F(4), F(1), F(1))
        assert not sqrt_diff_within(F(4), F(1), F(99, 100))
        assert sqrt_diff_within(F(2), F(2), F(0))

    def test_sqrt_within(self):
        assert sqrt_within(F(2), F(3, 2), F(1, 10))
        assert not sqrt_within(F(2), F(3, 2), F(1, 20))

    def test_sqrt_triangle_inequality(self):
        assert sqrt_leq_sqrt_sum(F(4), F(1), F(1))
        assert not sqrt_leq_sqrt_sum(F(5), F(1), F(1))

    def test_dist_sq(self):
        assert dist_sq((F(0), F(0)), (F(3), F(4))) == 25


def test_chord_sq_lengths():
    p = Polyline([(0, 0), (3, 0), (3, 4)])
    assert chord_sq_lengths(p) == (F(9), F(16))


def test_path_length_exact_for_rational_chords():
    p = Polyline([(0, 0), (3, 0), (3, 4)])
    assert path_length(p) == 7
