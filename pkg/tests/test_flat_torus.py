"""Flat torus: geodesic counts, cut loci, planner, monodromy control."""

import itertools
import random
from fractions import Fraction

import pytest

from geoplan.flat_torus import (
    TorusGeodesic,
    TorusPoint,
    antipodal_indices,
    torus_cut_locus,
    torus_geodesics,
    torus_local_poset,
    torus_loop_monodromy,
    torus_plan,
    torus_stratum,
)
from geoplan.metric_core import is_geodesic
from geoplan.strat_cover import lower_bound, validate_poset

F = Fraction
H = F(1, 2)


def brute_force_count(x: TorusPoint, y: TorusPoint, window: int = 2) -> int:
    """Independent count: minimal lifts of y in the lattice window."""
    best = None
    count = 0
    for shift in itertools.product(range(-window, window + 1), repeat=x.n):
        sq = sum((b + s - a) ** 2 for a, b, s in zip(x.coords, y.coords, shift))
        if best is None or sq < best:
            best, count = sq, 1
        elif sq == best:
            count += 1
    return count


class TestPoints:
    def test_make_reduces_modulo_one(self):
        p = TorusPoint.make([F(5, 4), F(-1, 4)])
        assert p.coords == (F(1, 4), F(3, 4))

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            TorusPoint.make([0.5, 0.5])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            TorusPoint.make([])


class TestCounts:
    def test_generic_pair_has_one_geodesic(self):
        x = TorusPoint.make([0, 0])
        y = TorusPoint.make([F(1, 10), F(1, 10)])
        geos = torus_geodesics(x, y)
        assert len(geos) == 1
        assert geos[0].displacement == (F(1, 10), F(1, 10))

    def test_single_antipodal_coordinate_doubles(self):
        x = TorusPoint.make([0, 0])
        y = TorusPoint.make([H, F(1, 5)])
        geos = torus_geodesics(x, y)
        assert len(geos) == 2
        assert {g.displacement[0] for g in geos} == {H, -H}

    def test_full_antipode_has_two_to_the_n(self):
        for n in (1, 2, 3, 4):
            x = TorusPoint.make([0] * n)
            y = TorusPoint.make([H] * n)
            geos = torus_geodesics(x, y)
            assert len(geos) == 2 ** n
            assert {g.displacement for g in geos} == set(
                itertools.product((H, -H), repeat=n)
            )
            assert all(g.squared_length == F(n, 4) for g in geos)

    def test_count_is_two_to_stratum_minus_one(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randrange(1, 5)
            x = TorusPoint.make([F(rng.randrange(24), 24) for _ in range(n)])
            y = TorusPoint.make([F(rng.randrange(24), 24) for _ in range(n)])
            k = torus_stratum(x, y)
            geos = torus_geodesics(x, y)
            assert k == len(antipodal_indices(x, y)) + 1
            assert len(geos) == 2 ** (k - 1)
            assert len(geos) == brute_force_count(x, y)
            assert len({g.displacement for g in geos}) == len(geos)

    def test_lifts_are_geodesics(self):
        x = TorusPoint.make([F(1, 3), F(2, 7)])
        y = TorusPoint.make([F(5, 6), F(1, 7)])
        for g in torus_geodesics(x, y):
            assert g.end == y
            assert is_geodesic(g.lift(), samples=8, tol=0)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            torus_geodesics(TorusPoint.make([0]), TorusPoint.make([0, 0]))


class TestDisplacementInvariant:
    def test_displacement_bounded_by_half(self):
        with pytest.raises(ValueError):
            TorusGeodesic(TorusPoint.make([0]), (F(3, 5),))


class TestCutLocus:
    def test_circle_cut_locus_is_antipode(self):
        locus = torus_cut_locus(TorusPoint.make([F(1, 3)]))
        assert len(locus.strata) == 1
        assert locus.strata[0].geodesic_count == 2
        assert locus.strata[0].representative.coords == (F(5, 6),)
        assert locus.graph is not None
        assert locus.graph.vertices[0].multiplicity == 2

    def test_square_torus_wedge(self):
        locus = torus_cut_locus(TorusPoint.make([0, 0]))
        graph = locus.graph
        assert graph is not None
        assert [v.multiplicity for v in graph.vertices] == [4]
        assert graph.vertices[0].point == (H, H)
        assert len(graph.edges) == 2
        assert {e.gluing for e in graph.edges} == {"meridian", "longitude"}
        assert all(e.multiplicity == 2 for e in graph.edges)

    def test_strata_enumerate_nonempty_subsets(self):
        x = TorusPoint.make([0, 0, 0])
        locus = torus_cut_locus(x)
        assert len(locus.strata) == 7
        assert locus.graph is None
        for s in locus.strata:
            assert s.geodesic_count == 2 ** len(s.fixed)
            assert s.level == len(s.fixed) + 1
            assert s.dimension == 3 - len(s.fixed)
            # representative really carries that many geodesics
            assert len(torus_geodesics(x, s.representative)) == s.geodesic_count


class TestPlanner:
    def test_generic_pair_in_domain_zero(self):
        res = torus_plan(TorusPoint.make([0, 0]), TorusPoint.make([F(1, 10), F(1, 10)]))
        assert (res.domain, res.count, res.rule) == (0, 1, "unique")

    def test_single_antipode_in_domain_one(self):
        res = torus_plan(TorusPoint.make([0, 0]), TorusPoint.make([H, F(1, 5)]))
        assert (res.domain, res.count, res.rule) == (1, 2, "plus_half")
        assert res.geodesic.displacement == (H, F(1, 5))

    def test_domain_equals_antipodal_count(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randrange(1, 4)
            x = TorusPoint.make([F(rng.randrange(12), 12) for _ in range(n)])
            y = TorusPoint.make([F(rng.randrange(12), 12) for _ in range(n)])
            res = torus_plan(x, y)
            assert res.domain == len(antipodal_indices(x, y))
            assert res.geodesic.end == y
            assert res.geodesic.displacement in {
                g.displacement for g in torus_geodesics(x, y)
            }

    def test_section_is_continuous_across_small_moves(self):
        # inside one domain the chosen displacement moves by exactly the nudge
        x = TorusPoint.make([0, 0])
        res_a = torus_plan(x, TorusPoint.make([H, F(1, 5)]))
        res_b = torus_plan(x, TorusPoint.make([H, F(1, 5) + F(1, 1000)]))
        d_a, d_b = res_a.geodesic.displacement, res_b.geodesic.displacement
        assert d_a[0] == d_b[0] == H
        assert abs(d_a[1] - d_b[1]) == F(1, 1000)


class TestMonodromyControl:
    def test_meridian_loop_is_identity(self):
        assert torus_loop_monodromy(steps=8) == (0, 1, 2, 3)
        assert torus_loop_monodromy(steps=12, x2=F(1, 3)) == (0, 1, 2, 3)

    def test_requires_enough_steps(self):
        with pytest.raises(ValueError):
            torus_loop_monodromy(steps=4)


class TestLocalPoset:
    def test_generic_pair_gives_one_level(self):
        poset = torus_local_poset(
            TorusPoint.make([0, 0]), TorusPoint.make([F(1, 10), F(1, 5)])
        )
        assert poset.level_count() == 1
        assert lower_bound(poset).lower_bound == 0

    def test_full_antipode_recovers_corner_poset(self):
        for n in (1, 2, 3):
            x = TorusPoint.make([0] * n)
            y = TorusPoint.make([H] * n)
            poset = torus_local_poset(x, y)
            assert validate_poset(poset).ok
            assert poset.level_count() == n + 1
            assert lower_bound(poset).lower_bound == n
