"""Seeded property-verification suites.

Each suite re-checks the invariants of one module on randomized inputs:
exact laws are asserted exactly (rational arithmetic end to end), metric
comparisons go through the squared-distance predicates of ``metric_core``.
Suites are deterministic for a fixed seed and shard cleanly by trial count.

The torus suite carries an independent brute-force oracle: geodesic counts
are recomputed by minimizing over an integer lattice of lifts with vectorized
integer arithmetic, so the closed-form classifier is confirmed against plain
distance minimization rather than against itself.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import cube_sphere, flat_torus, klein_bottle, metric_core, strat_cover
from .flat_torus import TorusPoint
from .klein_bottle import DeckElement, KleinPoint
from .metric_core import Polyline, sup_distance_sq

__all__ = ["CheckResult", "SuiteReport", "SUITES", "run_suite"]

_HALF = Fraction(1, 2)
_DELTA = Fraction(1, 1000)

#: Denominator of the rational sample lattice (even, so exact antipodes exist).
_DEN = 1000


@dataclass
class CheckResult:
    """Outcome of one property check."""

    name: str
    trials: int
    failures: int = 0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, detail: str) -> None:
        self.failures += 1
        if not self.detail:
            self.detail = detail


@dataclass
class SuiteReport:
    """Outcome of a suite run: per-check counts plus an overall verdict."""

    suite: str
    seed: int
    trials: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            if c.passed:
                lines.append(f"ok   {self.suite}.{c.name}: {c.trials} trials")
            else:
                lines.append(
                    f"FAIL {self.suite}.{c.name}: {c.failures}/{c.trials} trials"
                    + (f" ({c.detail})" if c.detail else "")
                )
        verdict = "pass" if self.passed else "FAIL"
        lines.append(f"{verdict} suite {self.suite} (seed={self.seed}, trials={self.trials})")
        return lines

    def to_document(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "trials": c.trials,
                    "failures": c.failures,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


def _rand_frac(rng: random.Random, den: int = _DEN) -> Fraction:
    return Fraction(rng.randrange(den), den)


def _rand_coords(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(_rand_frac(rng) for _ in range(n))


# ---------------------------------------------------------------------------
# Torus suite
# ---------------------------------------------------------------------------


def _lattice_offsets(n: int) -> np.ndarray:
    axes = [np.arange(-2, 3)] * n
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)


def torus_count_law(seed: int, trials: int, n: int) -> CheckResult:
    """count == 2^(k-1) from the classifier, and equals the number of
    minimizing lattice lifts in the window [-2, 2]^n (integer brute force)."""
    check = CheckResult(name=f"count_law_n{n}", trials=trials)
    rng = np.random.default_rng(seed + n)
    xs = rng.integers(0, _DEN, size=(trials, n))
    ys = rng.integers(0, _DEN, size=(trials, n))
    antipodal = rng.random(size=(trials, n)) < 0.25
    ys = np.where(antipodal, (xs + _DEN // 2) % _DEN, ys)
    offsets = _lattice_offsets(n) * _DEN
    chunk = max(1, 2_000_000 // max(1, offsets.shape[0] * n))
    brute = np.empty(trials, dtype=np.int64)
    for lo in range(0, trials, chunk):
        hi = min(trials, lo + chunk)
        diff = ys[lo:hi, None, :] + offsets[None, :, :] - xs[lo:hi, None, :]
        sq = np.sum(diff * diff, axis=-1)
        best = sq.min(axis=1)
        brute[lo:hi] = (sq == best[:, None]).sum(axis=1)
    for row in range(trials):
        x = TorusPoint.make([Fraction(int(v), _DEN) for v in xs[row]])
        y = TorusPoint.make([Fraction(int(v), _DEN) for v in ys[row]])
        k = flat_torus.torus_stratum(x, y)
        geos = flat_torus.torus_geodesics(x, y)
        if len(geos) != 2 ** (k - 1) or len(geos) != int(brute[row]):
            check.fail(
                f"x={x.coords} y={y.coords}: k={k}, "
                f"count={len(geos)}, brute={int(brute[row])}"
            )
    return check


def torus_planner_partition(seed: int, trials: int, n: int) -> CheckResult:
    """Planner domains are exactly 0..n, each realized; the section value is a
    genuine minimizing geodesic ending at the query point."""
    check = CheckResult(name=f"planner_partition_n{n}", trials=0)
    rng = random.Random(seed + 10 * n)
    pairs: list[tuple[TorusPoint, TorusPoint]] = []
    if n == 1:
        grid = [Fraction(i, 50) for i in range(50)]
        pairs.extend(
            (TorusPoint.make([a]), TorusPoint.make([b])) for a in grid for b in grid
        )
    if n == 2:
        origin = TorusPoint.make([0, 0])
        pairs.extend(
            (origin, TorusPoint.make([Fraction(i, 50), Fraction(j, 50)]))
            for i in range(50)
            for j in range(50)
        )
    # one deterministic pair per domain, so realization never hinges on luck
    for k in range(n + 1):
        x = TorusPoint.make([Fraction(1, 7)] * n)
        ycoords = [
            x.coords[i] + (_HALF if i < k else Fraction(1, 5)) for i in range(n)
        ]
        pairs.append((x, TorusPoint.make(ycoords)))
    for _ in range(trials):
        x = TorusPoint.make(_rand_coords(rng, n))
        ycoords = list(_rand_coords(rng, n))
        for i in range(n):
            if rng.random() < 0.3:
                ycoords[i] = (x.coords[i] + _HALF) % 1
        pairs.append((x, TorusPoint.make(ycoords)))
    check.trials = len(pairs)
    seen: set[int] = set()
    for x, y in pairs:
        result = flat_torus.torus_plan(x, y)
        k = flat_torus.torus_stratum(x, y)
        seen.add(result.domain)
        geos = flat_torus.torus_geodesics(x, y)
        displacements = {g.displacement for g in geos}
        g = result.geodesic
        if result.domain != k - 1 or not 0 <= result.domain <= n:
            check.fail(f"domain {result.domain} vs stratum {k} at {x.coords}->{y.coords}")
        elif g.end != y or g.displacement not in displacements:
            check.fail(f"section value not a geodesic at {x.coords}->{y.coords}")
    if seen != set(range(n + 1)):
        check.fail(f"domains realized: {sorted(seen)} != 0..{n}")
    return check


def torus_planner_continuity(seed: int, trials: int, n: int) -> CheckResult:
    """Perturbing a pair by <= delta inside its stratum moves the planned
    path by at most 4*delta in sup distance (exact squared comparison)."""
    check = CheckResult(name=f"planner_continuity_n{n}", trials=trials)
    rng = random.Random(seed + 100 * n)
    delta = _DELTA
    for _ in range(trials):
        x = list(_rand_coords(rng, n))
        y = list(_rand_coords(rng, n))
        for i in range(n):
            if rng.random() < 0.3:
                y[i] = (x[i] + _HALF) % 1
        # detect antipodality from the coordinates: random pairs can land on
        # the stratum by themselves, and those must be nudged along it too
        antipodal = [flat_torus._reduce(y[i] - x[i]) == _HALF for i in range(n)]
        x2, y2 = list(x), list(y)
        i = rng.randrange(n)
        tau = Fraction(rng.randrange(-1000, 1001), 1000) * delta
        if antipodal[i]:
            # move both endpoints: the coordinate stays exactly antipodal
            x2[i] = (x2[i] + tau) % 1
            y2[i] = (y2[i] + tau) % 1
        else:
            d = flat_torus._reduce(y[i] - x[i])
            rep = d if d < _HALF else d - 1
            if abs(rep + tau) >= _HALF:
                tau = -tau
            y2[i] = (y2[i] + tau) % 1
        a = flat_torus.torus_plan(TorusPoint.make(x), TorusPoint.make(y))
        b = flat_torus.torus_plan(TorusPoint.make(x2), TorusPoint.make(y2))
        if a.domain != b.domain:
            check.fail("perturbation left the domain")
            continue
        if sup_distance_sq(a.geodesic.lift(), b.geodesic.lift()) > (4 * delta) ** 2:
            check.fail(f"sup distance exceeds 4*delta at x={x} y={y} i={i}")
    return check


def torus_subspace_convexity(seed: int, trials: int, n: int) -> CheckResult:
    """Coordinates shared by both endpoints stay constant along every
    geodesic (sub-torus convexity)."""
    check = CheckResult(name=f"subspace_convexity_n{n}", trials=trials)
    rng = random.Random(seed + 1000 * n)
    for _ in range(trials):
        x = list(_rand_coords(rng, n))
        y = list(_rand_coords(rng, n))
        fixed = [i for i in range(n) if rng.random() < 0.5]
        for i in fixed:
            y[i] = x[i]
        geos = flat_torus.torus_geodesics(TorusPoint.make(x), TorusPoint.make(y))
        for g in geos:
            if any(g.displacement[i] != 0 for i in fixed):
                check.fail(f"geodesic leaves the sub-torus at {x}->{y}")
    return check


def torus_cut_locus_shape(seed: int, trials: int) -> CheckResult:
    """n=2 cut locus is a wedge of two circles at the antipode (one vertex of
    multiplicity 4, two loop edges); strata carry 2^|F| geodesics each."""
    check = CheckResult(name="cut_locus_shape", trials=trials)
    rng = random.Random(seed + 77)
    for _ in range(trials):
        x = TorusPoint.make(_rand_coords(rng, 2))
        cut = flat_torus.torus_cut_locus(x)
        graph = cut.graph
        antipode = tuple((c + _HALF) % 1 for c in x.coords)
        ok = (
            graph is not None
            and graph.multiplicities() == (4,)
            and len(graph.edges) == 2
            and graph.vertices[0].point == antipode
        )
        if not ok:
            check.fail(f"wedge shape violated at {x.coords}")
            continue
        for stratum in cut.strata:
            rep = stratum.representative
            expect = 2 ** len(stratum.fixed)
            if stratum.geodesic_count != expect:
                check.fail(f"stratum count {stratum.geodesic_count} != {expect}")
            elif len(flat_torus.torus_geodesics(x, rep)) != expect:
                check.fail(f"representative count mismatch at {x.coords}")
    return check


def torus_monodromy_control(seed: int, trials: int) -> CheckResult:
    """Transporting the four-geodesic labels around the horizontal loop in the
    torus gives the identity permutation."""
    check = CheckResult(name="monodromy_control", trials=trials)
    rng = random.Random(seed + 404)
    for _ in range(trials):
        x2 = Fraction(rng.randrange(_DEN), _DEN)
        steps = rng.choice([8, 12, 16])
        perm = flat_torus.torus_loop_monodromy(steps, x2=x2)
        if perm != tuple(range(4)):
            check.fail(f"nontrivial torus monodromy at x2={x2}: {perm}")
    return check


def torus_local_poset_shape(seed: int, trials: int) -> CheckResult:
    """Local poset at a pair with a antipodal coordinates has a+1 levels and
    bound a (when a >= 1)."""
    check = CheckResult(name="local_poset", trials=trials)
    rng = random.Random(seed + 505)
    for _ in range(trials):
        n = rng.randrange(1, 5)
        x = list(_rand_coords(rng, n))
        y = list(_rand_coords(rng, n))
        a = rng.randrange(0, n + 1)
        for i in range(a):
            y[i] = (x[i] + _HALF) % 1
        for i in range(a, n):
            if (y[i] - x[i]) % 1 == _HALF:
                y[i] = (x[i] + Fraction(1, 4)) % 1
        poset = flat_torus.torus_local_poset(TorusPoint.make(x), TorusPoint.make(y))
        report = strat_cover.lower_bound(poset)
        if poset.level_count() != a + 1:
            check.fail(f"levels {poset.level_count()} != {a + 1}")
        elif a >= 1 and report.lower_bound != a:
            check.fail(f"bound {report.lower_bound} != {a}")
        elif a == 0 and report.lower_bound != 0:
            check.fail("one-level poset should bound 0")
    return check


# ---------------------------------------------------------------------------
# Klein suite
# ---------------------------------------------------------------------------


def klein_window_stability(seed: int, trials: int) -> CheckResult:
    """Enlarging the lift window from 2 to 3 changes no geodesic set."""
    check = CheckResult(name="window_stability", trials=trials)
    rng = random.Random(seed + 11)
    for _ in range(trials):
        x = KleinPoint.make(_rand_coords(rng, 2))
        y = KleinPoint.make(_rand_coords(rng, 2))
        g2 = klein_bottle.klein_geodesics(x, y, window=2)
        g3 = klein_bottle.klein_geodesics(x, y, window=3)
        if [(g.end_lift, g.deck) for g in g2] != [(g.end_lift, g.deck) for g in g3]:
            check.fail(f"window instability at {x.coords}->{y.coords}")
    return check


def klein_horizontal_equivariance(seed: int, trials: int) -> CheckResult:
    """Horizontal translation is an isometry: a shifted pair has the same
    geodesic displacements.  When the base representative wraps through the
    glide gluing an odd number of times, re-basing is a glide reflection, so
    the vertical displacement components flip sign."""
    check = CheckResult(name="horizontal_equivariance", trials=trials)
    rng = random.Random(seed + 22)
    for _ in range(trials):
        x = KleinPoint.make(_rand_coords(rng, 2))
        y = KleinPoint.make(_rand_coords(rng, 2))
        t = _rand_frac(rng)
        xs = KleinPoint.make((x.coords[0] + t, x.coords[1]))
        ys = KleinPoint.make((y.coords[0] + t, y.coords[1]))
        a = klein_bottle.klein_geodesics(x, y)
        b = klein_bottle.klein_geodesics(xs, ys)
        sign = -1 if (x.coords[0] + t) >= 1 else 1
        expected = sorted((g.displacement[0], sign * g.displacement[1]) for g in a)
        if expected != sorted(g.displacement for g in b):
            check.fail(f"equivariance broken at {x.coords}->{y.coords}, t={t}")
    return check


def klein_deck_composition(seed: int, trials: int) -> CheckResult:
    """Deck transformations form a group acting on the plane: composition and
    inversion agree with pointwise application."""
    check = CheckResult(name="deck_composition", trials=trials)
    rng = random.Random(seed + 33)
    for _ in range(trials):
        g1 = DeckElement(rng.randrange(-3, 4), rng.randrange(-3, 4))
        g2 = DeckElement(rng.randrange(-3, 4), rng.randrange(-3, 4))
        g3 = DeckElement(rng.randrange(-3, 4), rng.randrange(-3, 4))
        p = (_rand_frac(rng) + rng.randrange(-2, 3), _rand_frac(rng) + rng.randrange(-2, 3))
        if g1.compose(g2).apply(p) != g1.apply(g2.apply(p)):
            check.fail(f"composition law broken for {g1}, {g2}")
        if g1.compose(g1.inverse()) != klein_bottle.IDENTITY:
            check.fail(f"inverse broken for {g1}")
        if g1.compose(g2).compose(g3) != g1.compose(g2.compose(g3)):
            check.fail("associativity broken")
    return check


def klein_cut_dichotomy(seed: int, trials: int) -> CheckResult:
    """Wedge (one multiplicity-4 vertex, two edges) exactly when the base
    second coordinate is 0 or 1/2; otherwise a theta graph (two
    multiplicity-3 vertices, three edges).  Vertex multiplicities are
    confirmed by counting minimizing lifts independently."""
    check = CheckResult(name="cut_dichotomy", trials=trials)
    rng = random.Random(seed + 44)
    for _ in range(trials):
        x2 = rng.choice([Fraction(0), _HALF]) if rng.random() < 0.35 else _rand_frac(rng)
        x = KleinPoint.make((_rand_frac(rng), x2))
        graph = klein_bottle.klein_cut_locus(x)
        on_circle = x.coords[1] in (Fraction(0), _HALF)
        if on_circle:
            shape_ok = graph.multiplicities() == (4,) and len(graph.edges) == 2
        else:
            shape_ok = graph.multiplicities() == (3, 3) and len(graph.edges) == 3
        if not shape_ok:
            check.fail(f"dichotomy violated at {x.coords}")
            continue
        for vertex in graph.vertices:
            v = KleinPoint.make(vertex.point)
            count = len(klein_bottle.klein_geodesics(x, v))
            if count != vertex.multiplicity:
                check.fail(f"multiplicity {vertex.multiplicity} vs oracle {count}")
    return check


def _cut_edge_point(edge, t: Fraction) -> KleinPoint:
    """Surface point at parameter ``t`` along a (straight) cut edge."""
    a, b = edge.points[0], edge.points[-1]
    return KleinPoint.reduce_lift(tuple(p + t * (q - p) for p, q in zip(a, b)))


def _klein_domain_samples(rng: random.Random) -> list[tuple[KleinPoint, KleinPoint]]:
    """Sampled pairs hitting every planner domain 0..4.

    Positive-dimensional strata are sampled through the cut locus itself:
    edge interiors for two-geodesic targets, theta vertices for three, the
    wedge vertex for four; the first-coordinate split picks the domain."""
    g1 = _rand_frac(rng, 97)
    while g1 == 0:
        g1 = _rand_frac(rng, 97)
    x_off = KleinPoint.make((g1, _rand_frac(rng, 89)))           # x1 != 0
    x_on = KleinPoint.make((Fraction(0), _rand_frac(rng, 89)))   # x1 == 0
    pairs = [(x_off, KleinPoint.make(_rand_coords(rng, 2)))]
    for x in (x_off, x_on):
        graph = klein_bottle.klein_cut_locus(x)
        edge = graph.edges[rng.randrange(len(graph.edges))]
        y = _cut_edge_point(edge, Fraction(rng.randrange(1, 20), 20))
        if klein_bottle.klein_stratum(x, y) == 2:
            pairs.append((x, y))
        pairs.append((x, KleinPoint.make(graph.vertices[0].point)))
    for x2 in (Fraction(0), _HALF):
        for x1 in (g1, Fraction(0)):
            x = KleinPoint.make((x1, x2))
            graph = klein_bottle.klein_cut_locus(x)
            pairs.append((x, KleinPoint.make(graph.vertices[0].point)))
    return pairs


def klein_planner_partition(seed: int, trials: int) -> CheckResult:
    """Domains 0..4 are all realized over sampled pairs, the domain index is
    the declared function of stratum and first coordinate, and every section
    value is a minimizing geodesic to the query point."""
    check = CheckResult(name="planner_partition", trials=0)
    rng = random.Random(seed + 55)
    pairs: list[tuple[KleinPoint, KleinPoint]] = []
    for _ in range(max(1, trials // 8)):
        pairs.extend(_klein_domain_samples(rng))
    check.trials = len(pairs)
    seen: set[int] = set()
    for x, y in pairs:
        m = klein_bottle.klein_stratum(x, y)
        result = klein_bottle.klein_plan(x, y)
        seen.add(result.domain)
        expected = 0 if m == 1 else (m if x.coords[0] == 0 else m - 1)
        geos = klein_bottle.klein_geodesics(x, y)
        choice = result.geodesic
        if result.domain != expected:
            check.fail(f"domain {result.domain} != {expected} at {x.coords}->{y.coords}")
        elif choice.end != y:
            check.fail(f"section does not end at target {y.coords}")
        elif (choice.end_lift, choice.deck) not in {(g.end_lift, g.deck) for g in geos}:
            check.fail(f"section value not among geodesics at {x.coords}->{y.coords}")
    if seen != {0, 1, 2, 3, 4}:
        check.fail(f"domains realized: {sorted(seen)} != 0..4")
    return check


def klein_planner_continuity(seed: int, trials: int) -> CheckResult:
    """Within one domain path component, a delta-perturbation of the pair
    moves the planned path by at most 1/100 in sup distance (delta = 1/1000).

    Families: generic targets for domain 0; sliding along a cut edge for the
    two-geodesic domains; moving the basepoint (the cut vertices follow
    continuously) for the three- and four-geodesic domains."""
    check = CheckResult(name="planner_continuity", trials=0)
    rng = random.Random(seed + 66)
    delta = _DELTA
    tol_sq = Fraction(1, 100) ** 2
    cases: list[tuple[KleinPoint, KleinPoint, KleinPoint, KleinPoint]] = []
    for _ in range(max(1, trials // 6)):
        # domain 0: nudge the target (deck-reduced horizontal move)
        x = KleinPoint.make(_rand_coords(rng, 2))
        y = KleinPoint.make(_rand_coords(rng, 2))
        y2 = KleinPoint.make((y.coords[0] + delta, y.coords[1]))
        if klein_bottle.klein_stratum(x, y) == 1 and klein_bottle.klein_stratum(x, y2) == 1:
            cases.append((x, y, x, y2))
        # domains 1/2: slide along a cut edge
        g1 = _rand_frac(rng, 97)
        for x1 in (g1, Fraction(0)):
            x = KleinPoint.make((x1, _rand_frac(rng, 89)))
            graph = klein_bottle.klein_cut_locus(x)
            edge = graph.edges[rng.randrange(len(graph.edges))]
            t = Fraction(rng.randrange(2, 17), 20)
            y = _cut_edge_point(edge, t)
            y2 = _cut_edge_point(edge, t + delta)
            if (
                klein_bottle.klein_stratum(x, y) == 2
                and klein_bottle.klein_stratum(x, y2) == 2
            ):
                cases.append((x, y, x, y2))
        # domains 2/3: theta vertices follow the basepoint
        x2 = _rand_frac(rng, 89)
        if x2 not in (Fraction(0), _HALF) and x2 + delta not in (Fraction(0), _HALF):
            for x1 in (g1, Fraction(0)):
                xa = KleinPoint.make((x1, x2))
                xb = KleinPoint.make((x1, x2 + delta if x2 + delta < 1 else x2 - delta))
                ga = klein_bottle.klein_cut_locus(xa)
                gb = klein_bottle.klein_cut_locus(xb)
                va = sorted(v.point for v in ga.vertices)
                vb = sorted(v.point for v in gb.vertices)
                cases.append(
                    (xa, KleinPoint.make(va[0]), xb, KleinPoint.make(vb[0]))
                )
        # domains 3/4: wedge vertex follows a horizontal move of the basepoint
        for x2c in (Fraction(0), _HALF):
            x1 = _rand_frac(rng, 97)
            if x1 == 0 or x1 + delta == 1:
                continue
            xa = KleinPoint.make((x1, x2c))
            xb = KleinPoint.make((x1 + delta, x2c))
            ga = klein_bottle.klein_cut_locus(xa)
            gb = klein_bottle.klein_cut_locus(xb)
            cases.append(
                (
                    xa,
                    KleinPoint.make(ga.vertices[0].point),
                    xb,
                    KleinPoint.make(gb.vertices[0].point),
                )
            )
    check.trials = len(cases)
    for xa, ya, xb, yb in cases:
        ra = klein_bottle.klein_plan(xa, ya)
        rb = klein_bottle.klein_plan(xb, yb)
        if ra.domain != rb.domain:
            check.fail(f"perturbation left the domain at {xa.coords}->{ya.coords}")
            continue
        pa = Polyline([ra.geodesic.start_lift, ra.geodesic.end_lift])
        pb = Polyline([rb.geodesic.start_lift, rb.geodesic.end_lift])
        if sup_distance_sq(pa, pb) > tol_sq:
            check.fail(f"sup distance exceeds tolerance at {xa.coords}->{ya.coords}")
    return check


def klein_monodromy_nontrivial(seed: int, trials: int) -> CheckResult:
    """Transporting the four geodesic labels around the horizontal loop swaps
    up and down (a nontrivial order-2 permutation) over both special circles,
    while the torus control loop is the identity."""
    check = CheckResult(name="monodromy", trials=trials)
    rng = random.Random(seed + 88)
    for _ in range(trials):
        steps = rng.choice([8, 12, 16, 24])
        for x2 in (Fraction(0), _HALF):
            result = klein_bottle.klein_monodromy(x2, steps=steps)
            swap = result.label_map()
            if result.is_identity or result.order != 2:
                check.fail(f"monodromy not order 2 at x2={x2}")
            elif swap != {"DL": "UL", "UL": "DL", "DR": "UR", "UR": "DR"}:
                check.fail(f"unexpected label action {swap}")
        if flat_torus.torus_loop_monodromy(steps) != tuple(range(4)):
            check.fail("torus control loop not identity")
    return check


def klein_theta_frozen(seed: int, trials: int) -> CheckResult:
    """Frozen theta-graph data at base (1/2, 3/10): vertex classes
    (22/25, 4/5) and (3/25, 4/5), three edges, multiplicities (3, 3)."""
    check = CheckResult(name="theta_frozen", trials=1)
    graph = klein_bottle.klein_cut_locus(KleinPoint.make((_HALF, Fraction(3, 10))))
    points = sorted(v.point for v in graph.vertices)
    expect = [
        (Fraction(3, 25), Fraction(4, 5)),
        (Fraction(22, 25), Fraction(4, 5)),
    ]
    if points != expect or graph.multiplicities() != (3, 3) or len(graph.edges) != 3:
        check.fail(f"frozen theta data mismatch: {points}")
    return check


# ---------------------------------------------------------------------------
# Cube suite
# ---------------------------------------------------------------------------


def _rand_interior(rng: random.Random, den: int = 60) -> Fraction:
    v = Fraction(rng.randrange(-den + 1, den), 2 * den)
    return v


def cube_identity(seed: int, trials: int) -> CheckResult:
    """L_i^2 == 2*N_i + (|x|^2 + |y|^2 + 4) exactly, for every candidate."""
    check = CheckResult(name="normalization_identity", trials=trials)
    rng = random.Random(seed + 13)
    for _ in range(trials):
        x = (_rand_interior(rng), _rand_interior(rng))
        y = (_rand_interior(rng), _rand_interior(rng))
        table = cube_sphere.opposite_face_table(x, y)
        common = table.common_summand
        if any(l != 2 * n + common for l, n in zip(table.l_sq, table.n)):
            check.fail(f"identity fails at {x}, {y}")
    return check


def cube_formula_oracle(seed: int, trials: int) -> CheckResult:
    """The minimum over admissible closed-form candidates equals the unfolding
    oracle's minimum, with identical minimizer sets (compared by trace)."""
    check = CheckResult(name="formula_oracle", trials=trials)
    rng = random.Random(seed + 26)
    for _ in range(trials):
        x = (_rand_interior(rng), _rand_interior(rng))
        y = (_rand_interior(rng), _rand_interior(rng))
        table = cube_sphere.opposite_face_table(x, y)
        xp = cube_sphere.CubePoint.make("z-", *x)
        yp = cube_sphere.CubePoint.make("z+", *y)
        geos = cube_sphere.cube_geodesics(xp, yp)
        if table.min_squared_length() != geos[0].squared_length:
            check.fail(f"formula min != oracle min at {x}, {y}")
            continue
        argmin_traces = {
            cube_sphere.candidate_path(x, y, i).trace for i in table.argmin_indices()
        }
        if argmin_traces != {g.trace for g in geos}:
            check.fail(f"argmin sets differ at {x}, {y}")
    return check


def cube_symmetric_diagonal(seed: int, trials: int) -> CheckResult:
    """Symmetric diagonal pairs have exactly four geodesics, realized by
    candidates 1, 4, 7, 10."""
    check = CheckResult(name="symmetric_diagonal", trials=0)
    rng = random.Random(seed + 39)
    zs = [
        Fraction(1, 10),
        Fraction(1, 7),
        Fraction(1, 5),
        Fraction(1, 4),
        Fraction(1, 3),
        Fraction(2, 5),
    ]
    for _ in range(max(0, trials - len(zs))):
        zs.append(Fraction(rng.randrange(1, 60), 120))
    check.trials = len(zs)
    for z in zs:
        table = cube_sphere.opposite_face_table((-z, -z), (z, -z))
        x = cube_sphere.CubePoint.make("z-", -z, -z)
        y = cube_sphere.CubePoint.make("z+", z, -z)
        geos = cube_sphere.cube_geodesics(x, y)
        if table.argmin_indices() != (1, 4, 7, 10) or len(geos) != 4:
            check.fail(f"symmetric diagonal law fails at z={z}")
        elif table.n != cube_sphere.diagonal_table(z, z):
            check.fail(f"diagonal substitution mismatch at z={z}")
    return check


def cube_corner_geodesics(seed: int, trials: int) -> CheckResult:
    """Exactly six geodesics of squared length 5 between opposite corners,
    and the limit table is internally consistent with them."""
    check = CheckResult(name="corner_geodesics", trials=1)
    p, q = cube_sphere.corner_pair()
    geos = cube_sphere.cube_geodesics(p, q)
    if len(geos) != 6 or any(g.squared_length != 5 for g in geos):
        check.fail(f"corner count {len(geos)}")
        return check
    try:
        labeled = cube_sphere.corner_limit_geodesics()
    except RuntimeError as exc:
        check.fail(str(exc))
        return check
    if sorted(labeled) != ["D1", "D2", "D3", "D4", "D5", "D6"]:
        check.fail("bad label set")
    return check


def cube_witnesses(seed: int, trials: int) -> CheckResult:
    """Witness pairs reproduce minimizer sets {1,4,7,10} / {1,4} / {1} for all
    i, j <= 5 with the symbolically-derived k (= 1)."""
    check = CheckResult(name="witness_sequences", trials=0)
    for i in range(1, 6):
        for j in range(1, 6):
            k = cube_sphere.minimal_stable_k(i, j)
            s, r, t = cube_sphere.witness_sequences(i, j, k)
            check.trials += 1
            if k != 1:
                check.fail(f"stable k {k} != 1 at i={i}, j={j}")
            elif (s.indices, r.indices, t.indices) != ((1, 4, 7, 10), (1, 4), (1,)):
                check.fail(f"witness sets wrong at i={i}, j={j}")
    return check


def cube_rotation_symmetry(seed: int, trials: int) -> CheckResult:
    """The corner rotation is an isometry: geodesic traces of a rotated pair
    are the rotated traces."""
    check = CheckResult(name="rotation_symmetry", trials=trials)
    rng = random.Random(seed + 52)
    for _ in range(trials):
        x = cube_sphere.CubePoint.make("z-", _rand_interior(rng), _rand_interior(rng))
        y = cube_sphere.CubePoint.make("z+", _rand_interior(rng), _rand_interior(rng))
        rx = cube_sphere.CubePoint.from_space(cube_sphere.rotate_point(x.point))
        ry = cube_sphere.CubePoint.from_space(cube_sphere.rotate_point(y.point))
        a = {cube_sphere.rotate_trace(g.trace) for g in cube_sphere.cube_geodesics(x, y)}
        b = {g.trace for g in cube_sphere.cube_geodesics(rx, ry)}
        if a != b:
            check.fail(f"rotation symmetry fails at {x}, {y}")
    return check


def cube_face_budget_stability(seed: int, trials: int) -> CheckResult:
    """Raising the face budget from 5 to 6 changes no geodesic set."""
    check = CheckResult(name="face_budget_stability", trials=trials)
    rng = random.Random(seed + 65)
    for _ in range(trials):
        x = cube_sphere.CubePoint.make("z-", _rand_interior(rng), _rand_interior(rng))
        face = ("z+", "x+", "y-")[rng.randrange(3)]
        y = cube_sphere.CubePoint.make(face, _rand_interior(rng), _rand_interior(rng))
        g5 = cube_sphere.cube_geodesics(x, y, max_faces=5)
        g6 = cube_sphere.cube_geodesics(x, y, max_faces=6)
        if [g.trace for g in g5] != [g.trace for g in g6]:
            check.fail(f"budget instability at {x}, {y}")
    return check


def cube_corner_convergence(seed: int, trials: int) -> CheckResult:
    """Diagonal-family paths converge to their labeled corner geodesics:
    at corner offset a the constant-speed sup distance is below 2a and
    shrinks when a does."""
    check = CheckResult(name="corner_convergence", trials=0)
    labeled = cube_sphere.corner_limit_geodesics()
    table = cube_sphere.corner_limit_table()
    previous: dict[int, Fraction] = {}
    for a in (Fraction(1, 10), Fraction(1, 100)):
        for idx in (1, 4, 7, 10):
            check.trials += 1
            path = cube_sphere.candidate_path(
                (-_HALF + a, -_HALF + a), (_HALF - a, -_HALF + a), idx
            )
            limit = labeled[table[("A", idx)]]
            cs_path = metric_core.reparametrize_constant_speed(path.as_polyline())
            cs_limit = metric_core.reparametrize_constant_speed(Polyline(limit))
            d_sq = sup_distance_sq(cs_path, cs_limit, samples=32)
            if d_sq > (2 * a) ** 2:
                check.fail(f"family {idx} too far from its limit at offset {a}")
            if idx in previous and d_sq >= previous[idx]:
                check.fail(f"family {idx} not converging")
            previous[idx] = d_sq
    return check


# ---------------------------------------------------------------------------
# Core suite
# ---------------------------------------------------------------------------


def _random_polyline(rng: random.Random, collinear: bool) -> Polyline:
    dim = rng.randrange(1, 4)
    count = rng.randrange(2, 11)
    if collinear:
        base = tuple(_rand_frac(rng, 40) for _ in range(dim))
        direction = tuple(Fraction(rng.randrange(-5, 6), 7) for _ in range(dim))
        if all(d == 0 for d in direction):
            direction = (Fraction(1),) + tuple(Fraction(0) for _ in range(dim - 1))
        t = Fraction(0)
        vertices = [base]
        for _ in range(count - 1):
            t += Fraction(rng.randrange(1, 9), 11)
            vertices.append(tuple(b + t * d for b, d in zip(base, direction)))
        return Polyline(vertices)
    vertices = [tuple(_rand_frac(rng, 40) for _ in range(dim))]
    while len(vertices) < count:
        v = tuple(_rand_frac(rng, 40) for _ in range(dim))
        if v != vertices[-1]:
            vertices.append(v)
    return Polyline(vertices)


def core_reparametrization(seed: int, trials: int) -> CheckResult:
    """Constant-speed output: parameters equal cumulative length fractions,
    endpoints preserved, strictly monotone, idempotent; on rational-ratio
    polylines parameter increments are exactly proportional to chord
    lengths."""
    check = CheckResult(name="reparametrization", trials=trials)
    rng = random.Random(seed + 7)
    for _ in range(trials):
        p = _random_polyline(rng, collinear=rng.random() < 0.5)
        profile = metric_core.speed_profile(p)
        q = metric_core.reparametrize_constant_speed(p)
        if q.params != profile.values or q.vertices != p.vertices:
            check.fail("params differ from cumulative fractions")
            continue
        if q.params[0] != 0 or q.params[-1] != 1:
            check.fail("endpoints not preserved")
            continue
        if metric_core.reparametrize_constant_speed(q) != q:
            check.fail("not idempotent")
            continue
        if profile.exact:
            sq = metric_core.chord_sq_lengths(p)
            steps = [q.params[i + 1] - q.params[i] for i in range(len(sq))]
            for i in range(len(sq)):
                for j in range(i + 1, len(sq)):
                    if steps[i] ** 2 * sq[j] != steps[j] ** 2 * sq[i]:
                        check.fail("increments not proportional to lengths")
    return check


def core_straight_segments(seed: int, trials: int) -> CheckResult:
    """Reparametrized monotone collinear polylines and raw segments pass the
    exact geodesic test; a genuinely bent polyline fails it."""
    check = CheckResult(name="straight_segments", trials=trials)
    rng = random.Random(seed + 14)
    for _ in range(trials):
        p = _random_polyline(rng, collinear=True)
        q = metric_core.reparametrize_constant_speed(p)
        if not metric_core.is_geodesic(q, samples=8):
            check.fail("straight reparametrized polyline rejected")
            continue
        seg = Polyline([q.vertices[0], q.vertices[-1]])
        if not metric_core.is_geodesic(seg, samples=8):
            check.fail("raw straight segment rejected")
            continue
        a = q.vertices[0]
        bent = Polyline(
            [a, tuple(c + 1 for c in a), tuple(c + 2 for c in a[:-1]) + (a[-1],)]
            if len(a) > 1
            else [a, (a[0] + 1,), (a[0],)],
        )
        if metric_core.is_geodesic(metric_core.reparametrize_constant_speed(bent), samples=8):
            check.fail("bent polyline accepted")
    return check


def core_sqrt_predicates(seed: int, trials: int) -> CheckResult:
    """Squared-comparison predicates agree with floating-point arithmetic away
    from the decision boundary."""
    check = CheckResult(name="sqrt_predicates", trials=trials)
    rng = random.Random(seed + 21)
    for _ in range(trials):
        a = Fraction(rng.randrange(0, 400), rng.randrange(1, 40))
        b = Fraction(rng.randrange(0, 400), rng.randrange(1, 40))
        c = Fraction(rng.randrange(0, 400), rng.randrange(1, 40))
        tol = Fraction(rng.randrange(0, 30), 10)
        fa, fb, fc = (math.sqrt(float(v)) for v in (a, b, c))
        ft = float(tol)
        margin = 1e-9
        diff = abs(fa - fb)
        if abs(diff - ft) > margin:
            if metric_core.sqrt_diff_within(a, b, tol) != (diff <= ft):
                check.fail(f"sqrt_diff_within disagrees at {a}, {b}, {tol}")
        lhs, rhs = fa, fb + fc
        if abs(lhs - rhs) > margin:
            if metric_core.sqrt_leq_sqrt_sum(a, b, c) != (lhs <= rhs):
                check.fail(f"sqrt_leq_sqrt_sum disagrees at {a}, {b}, {c}")
        target = Fraction(rng.randrange(0, 40), rng.randrange(1, 12))
        if abs(fa - float(target)) > margin and abs(abs(fa - float(target)) - ft) > margin:
            if metric_core.sqrt_within(a, target, tol) != (abs(fa - float(target)) <= ft):
                check.fail(f"sqrt_within disagrees at {a}, {target}, {tol}")
        approx = metric_core.sqrt_approx(a)
        if abs(float(approx) - fa) > 1e-12 * max(1.0, fa):
            check.fail(f"sqrt_approx off at {a}")
    return check


def core_sup_distance(seed: int, trials: int) -> CheckResult:
    """Sup distance: zero against itself, symmetric, and never decreasing
    when the comparison grid is refined."""
    check = CheckResult(name="sup_distance", trials=trials)
    rng = random.Random(seed + 28)
    for _ in range(trials):
        p = _random_polyline(rng, collinear=False)
        q = _random_polyline(rng, collinear=False)
        while q.dimension != p.dimension:
            q = _random_polyline(rng, collinear=False)
        if sup_distance_sq(p, p) != 0:
            check.fail("nonzero self distance")
        elif sup_distance_sq(p, q) != sup_distance_sq(q, p):
            check.fail("asymmetric")
        elif sup_distance_sq(p, q, samples=16) < sup_distance_sq(p, q):
            check.fail("refinement decreased the sup")
    return check


# ---------------------------------------------------------------------------
# Poset suite (part of core verification surface)
# ---------------------------------------------------------------------------


def poset_builtin_bounds(seed: int, trials: int) -> CheckResult:
    """Builtin posets validate and produce the expected lower bounds."""
    check = CheckResult(name="builtin_bounds", trials=0)
    expected = {
        "circle": 1,
        "torus_corner:1": 1,
        "torus_corner:2": 2,
        "torus_corner:3": 3,
        "torus_corner:4": 4,
        "klein_S4": 3,
        "cube_corner": 3,
    }
    for name, bound in expected.items():
        check.trials += 1
        poset, _flags = strat_cover.builtin_poset(name)
        report = strat_cover.lower_bound(poset)
        if not report.valid or report.lower_bound != bound:
            check.fail(f"{name}: bound {report.lower_bound} != {bound}")
    return check


def poset_relabel_invariance(seed: int, trials: int) -> CheckResult:
    """The bound is invariant under random relabeling of ids and sheets."""
    check = CheckResult(name="relabel_invariance", trials=trials)
    rng = random.Random(seed + 35)
    names = ["circle", "torus_corner:2", "torus_corner:3", "klein_S4", "cube_corner"]
    for t in range(trials):
        poset, _flags = strat_cover.builtin_poset(names[t % len(names)])
        base = strat_cover.lower_bound(poset).lower_bound
        ids = [e.id for e in poset.elements]
        id_map = dict(zip(ids, rng.sample(range(10 * len(ids)), len(ids))))
        sheet_names = sorted({s for e in poset.elements for s in e.sheets})
        sheet_map = dict(
            zip(sheet_names, rng.sample(range(10 * len(sheet_names)), len(sheet_names)))
        )
        relabeled = strat_cover.StratPoset(
            elements=tuple(
                strat_cover.PosetElement(
                    id=str(id_map[e.id]),
                    level=e.level,
                    sheets=tuple(str(sheet_map[s]) for s in e.sheets),
                )
                for e in poset.elements
            ),
            covers=tuple(
                strat_cover.CoverMap(
                    src=str(id_map[c.src]),
                    dst=str(id_map[c.dst]),
                    mapping={
                        str(sheet_map[a]): str(sheet_map[b]) for a, b in c.mapping.items()
                    },
                )
                for c in poset.covers
            ),
        )
        report = strat_cover.lower_bound(relabeled)
        if not report.valid or report.lower_bound != base:
            check.fail(f"relabeling changed the bound for {names[t % len(names)]}")
    return check


def poset_monotonicity(seed: int, trials: int) -> CheckResult:
    """Deleting the top level of an everywhere-inconsistent poset lowers the
    bound by exactly one; bottom elements are never inconsistent."""
    check = CheckResult(name="monotonicity", trials=0)
    for name in ["torus_corner:2", "torus_corner:3", "torus_corner:4", "cube_corner", "klein_S4"]:
        check.trials += 1
        poset, _flags = strat_cover.builtin_poset(name)
        base = strat_cover.lower_bound(poset).lower_bound
        top = poset.level_count()
        truncated = strat_cover.StratPoset(
            elements=tuple(e for e in poset.elements if e.level < top),
            covers=tuple(
                c for c in poset.covers if poset.by_id[c.dst].level < top
            ),
        )
        report = strat_cover.lower_bound(truncated)
        if report.lower_bound != base - 1:
            check.fail(f"truncated {name}: {report.lower_bound} != {base - 1}")
        bottom = [e.id for e in poset.elements if e.level == 1]
        if any(strat_cover.inconsistent_at(poset, b) for b in bottom):
            check.fail(f"bottom element inconsistent in {name}")
    return check


def poset_rejects_violations(seed: int, trials: int) -> CheckResult:
    """Validation rejects non-adjacent covers, non-injective sheet maps, and
    composition-inconsistent chains."""
    check = CheckResult(name="rejects_violations", trials=3)
    E = strat_cover.PosetElement
    C = strat_cover.CoverMap
    skip = strat_cover.StratPoset(
        elements=(E("a", 1, ("s",)), E("b", 2, ("s",)), E("c", 3, ("s",))),
        covers=(C("a", "c", {"s": "s"}),),
    )
    if strat_cover.validate_poset(skip).ok:
        check.fail("level-skipping cover accepted")
    noninj = strat_cover.StratPoset(
        elements=(E("a", 1, ("p", "q")), E("b", 2, ("r", "t"))),
        covers=(C("a", "b", {"p": "r", "q": "r"}),),
    )
    if strat_cover.validate_poset(noninj).ok:
        check.fail("non-injective sheet map accepted")
    conflict = strat_cover.StratPoset(
        elements=(
            E("a", 1, ("s",)),
            E("b1", 2, ("s",)),
            E("b2", 2, ("s",)),
            E("c", 3, ("u", "v")),
        ),
        covers=(
            C("a", "b1", {"s": "s"}),
            C("a", "b2", {"s": "s"}),
            C("b1", "c", {"s": "u"}),
            C("b2", "c", {"s": "v"}),
        ),
    )
    if strat_cover.validate_poset(conflict).ok:
        check.fail("composition-inconsistent chains accepted")
    return check


# ---------------------------------------------------------------------------
# Suite assembly
# ---------------------------------------------------------------------------


def _run_core(seed: int, trials: int) -> SuiteReport:
    report = SuiteReport(suite="core", seed=seed, trials=trials)
    report.checks.append(core_reparametrization(seed, trials))
    report.checks.append(core_straight_segments(seed, max(1, trials // 2)))
    report.checks.append(core_sqrt_predicates(seed, trials))
    report.checks.append(core_sup_distance(seed, max(1, trials // 2)))
    report.checks.append(poset_builtin_bounds(seed, trials))
    report.checks.append(poset_relabel_invariance(seed, min(trials, 50)))
    report.checks.append(poset_monotonicity(seed, trials))
    report.checks.append(poset_rejects_violations(seed, trials))
    return report


def _run_torus(seed: int, trials: int) -> SuiteReport:
    report = SuiteReport(suite="torus", seed=seed, trials=trials)
    for n in (1, 2, 3, 4):
        report.checks.append(torus_count_law(seed, trials, n))
    for n in (1, 2, 3):
        report.checks.append(torus_planner_partition(seed, min(trials, 2000), n))
        report.checks.append(torus_planner_continuity(seed, min(trials, 500), n))
        report.checks.append(torus_subspace_convexity(seed, min(trials, 500), n))
    report.checks.append(torus_cut_locus_shape(seed, min(trials, 200)))
    report.checks.append(torus_monodromy_control(seed, min(trials, 20)))
    report.checks.append(torus_local_poset_shape(seed, min(trials, 100)))
    return report


def _run_klein(seed: int, trials: int) -> SuiteReport:
    report = SuiteReport(suite="klein", seed=seed, trials=trials)
    report.checks.append(klein_window_stability(seed, min(trials, 500)))
    report.checks.append(klein_horizontal_equivariance(seed, min(trials, 500)))
    report.checks.append(klein_deck_composition(seed, trials))
    report.checks.append(klein_cut_dichotomy(seed, min(trials, 1000)))
    report.checks.append(klein_planner_partition(seed, min(trials, 400)))
    report.checks.append(klein_planner_continuity(seed, min(trials, 300)))
    report.checks.append(klein_monodromy_nontrivial(seed, min(trials, 5)))
    report.checks.append(klein_theta_frozen(seed, 1))
    return report


def _run_cube(seed: int, trials: int) -> SuiteReport:
    report = SuiteReport(suite="cube", seed=seed, trials=trials)
    report.checks.append(cube_identity(seed, trials))
    report.checks.append(cube_formula_oracle(seed, min(trials, 1000)))
    report.checks.append(cube_symmetric_diagonal(seed, min(trials, 30)))
    report.checks.append(cube_corner_geodesics(seed, 1))
    report.checks.append(cube_witnesses(seed, 25))
    report.checks.append(cube_rotation_symmetry(seed, min(trials, 50)))
    report.checks.append(cube_face_budget_stability(seed, min(trials, 50)))
    report.checks.append(cube_corner_convergence(seed, 8))
    return report


SUITES = {
    "core": _run_core,
    "torus": _run_torus,
    "klein": _run_klein,
    "cube": _run_cube,
}


def run_suite(name: str, seed: int = 0, trials: int = 200) -> list[SuiteReport]:
    """Run one suite (or ``all``) and return its reports."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if name == "all":
        return [runner(seed, trials) for runner in SUITES.values()]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return [SUITES[name](seed, trials)]
