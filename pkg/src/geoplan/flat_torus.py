"""Geodesics, strata, cut loci and the optimal planner on the flat n-torus.

The torus is the product of ``n`` circles of circumference 1; distances come
from the flat product metric.  A geodesic between ``x`` and ``y`` moves every
coordinate along a shortest arc simultaneously, so the minimizing geodesics
are indexed by the per-coordinate arc choices: a coordinate sitting exactly
opposite (offset 1/2) admits both directions, everything else is forced.
With ``k - 1`` opposite coordinates there are exactly ``2^(k-1)`` geodesics,
and the pair space splits into strata ``S_1 .. S_(n+1)`` by that count.

The planner resolves every tie toward displacement ``+1/2``, which is a
continuous choice on each stratum, giving ``n + 1`` planner domains
``E_0 .. E_n`` (domain index = stratum - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .cutgraph import CutEdge, CutLocusGraph, CutVertex
from .metric_core import Polyline, _frac
from .planning import PlannerResult, nearest_lift_permutation
from .strat_cover import PosetElement, StratPoset, torus_corner_poset

__all__ = [
    "TorusCutLocus",
    "TorusCutStratum",
    "TorusGeodesic",
    "TorusPoint",
    "torus_cut_locus",
    "torus_geodesics",
    "torus_local_poset",
    "torus_loop_monodromy",
    "torus_plan",
    "torus_stratum",
]

_HALF = Fraction(1, 2)


def _reduce(value: Fraction) -> Fraction:
    return value - (value.numerator // value.denominator)


@dataclass(frozen=True)
class TorusPoint:
    """A point with rational coordinates reduced to [0, 1) per circle."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise ValueError("torus dimension must be at least 1")
        for c in self.coords:
            if not isinstance(c, Fraction):
                raise TypeError("coordinates must be Fractions; use TorusPoint.make")
            if not 0 <= c < 1:
                raise ValueError(f"coordinate {c} not reduced to [0, 1)")

    @classmethod
    def make(cls, values) -> "TorusPoint":
        return cls(tuple(_reduce(_frac(v)) for v in values))

    @property
    def n(self) -> int:
        return len(self.coords)

    def translate(self, displacement) -> "TorusPoint":
        if len(displacement) != self.n:
            raise ValueError("dimension mismatch")
        return TorusPoint.make(
            tuple(c + _frac(d) for c, d in zip(self.coords, displacement))
        )


@dataclass(frozen=True)
class TorusGeodesic:
    """A minimizing geodesic recorded by its start and lift displacement.

    Each displacement entry lies in [-1/2, 1/2]; projecting
    ``start + t * displacement`` mod 1 traces the geodesic.
    """

    start: TorusPoint
    displacement: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.displacement) != self.start.n:
            raise ValueError("dimension mismatch")
        for d in self.displacement:
            if not -_HALF <= d <= _HALF:
                raise ValueError(f"displacement {d} exceeds the shortest arc")

    @property
    def squared_length(self) -> Fraction:
        return sum((d * d for d in self.displacement), Fraction(0))

    @property
    def end(self) -> TorusPoint:
        return self.start.translate(self.displacement)

    def point_at(self, t) -> TorusPoint:
        t = _frac(t)
        return self.start.translate(tuple(t * d for d in self.displacement))

    def lift(self) -> Polyline:
        a = self.start.coords
        b = tuple(c + d for c, d in zip(a, self.displacement))
        return Polyline((a, b)) if a != b else Polyline((a, a))


def _check_pair(x: TorusPoint, y: TorusPoint) -> None:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} vs {y.n}")


def antipodal_indices(x: TorusPoint, y: TorusPoint) -> tuple[int, ...]:
    """Coordinates where ``y`` sits exactly opposite ``x`` (offset 1/2)."""
    _check_pair(x, y)
    return tuple(
        i
        for i, (a, b) in enumerate(zip(x.coords, y.coords))
        if _reduce(b - a) == _HALF
    )


def torus_stratum(x: TorusPoint, y: TorusPoint) -> int:
    """Stratum index ``k`` in 1..n+1: ``k - 1`` coordinates are opposite."""
    return 1 + len(antipodal_indices(x, y))


def torus_geodesics(x: TorusPoint, y: TorusPoint) -> tuple[TorusGeodesic, ...]:
    """All minimizing geodesics, sorted lexicographically by displacement.

    Exactly ``2^(k-1)`` entries for ``k = torus_stratum(x, y)``, all of equal
    squared length.
    """
    _check_pair(x, y)
    per_coord: list[tuple[Fraction, ...]] = []
    for a, b in zip(x.coords, y.coords):
        delta = _reduce(b - a)
        if delta == _HALF:
            per_coord.append((-_HALF, _HALF))
        elif delta < _HALF:
            per_coord.append((delta,))
        else:
            per_coord.append((delta - 1,))
    return tuple(
        TorusGeodesic(x, disp) for disp in sorted(product(*per_coord))
    )


@dataclass(frozen=True)
class TorusCutStratum:
    """One cut-locus stratum: the points opposite in exactly ``fixed``."""

    fixed: tuple[int, ...]
    dimension: int
    geodesic_count: int
    level: int
    representative: TorusPoint


@dataclass(frozen=True)
class TorusCutLocus:
    """Union-of-subtori description of the cut locus, plus a drawable graph
    for n <= 2 (a point for the circle, a wedge of two circles for n = 2)."""

    base: TorusPoint
    strata: tuple[TorusCutStratum, ...]
    graph: CutLocusGraph | None


def torus_cut_locus(x: TorusPoint) -> TorusCutLocus:
    """Cut locus of ``x``: all points opposite in at least one coordinate.

    Strata are indexed by the nonempty subsets of opposite coordinates; the
    subset of size ``a`` carries ``2^a`` geodesics on a codimension-``a``
    subtorus.
    """
    n = x.n
    strata = []
    indices = range(n)
    for size in range(1, n + 1):
        for fixed in combinations(indices, size):
            rep = list(x.coords)
            for i in fixed:
                rep[i] = _reduce(rep[i] + _HALF)
            strata.append(
                TorusCutStratum(
                    fixed=fixed,
                    dimension=n - size,
                    geodesic_count=2 ** size,
                    level=size + 1,
                    representative=TorusPoint(tuple(rep)),
                )
            )
    graph: CutLocusGraph | None = None
    antipode = tuple(_reduce(c + _HALF) for c in x.coords)
    if n == 1:
        graph = CutLocusGraph((CutVertex(antipode, 2),), ())
    elif n == 2:
        u, v = antipode
        graph = CutLocusGraph(
            (CutVertex(antipode, 4),),
            (
                CutEdge(0, 0, ((u, v), (u, v + 1)), gluing="meridian"),
                CutEdge(0, 0, ((u, v), (u + 1, v)), gluing="longitude"),
            ),
        )
    return TorusCutLocus(base=x, strata=tuple(strata), graph=graph)


def torus_plan(x: TorusPoint, y: TorusPoint) -> PlannerResult:
    """Planner: every opposite coordinate moves in the + direction.

    Domain index is ``torus_stratum(x, y) - 1``; the chosen geodesic always
    belongs to ``torus_geodesics(x, y)``.
    """
    _check_pair(x, y)
    opposite = antipodal_indices(x, y)
    disp = []
    for i, (a, b) in enumerate(zip(x.coords, y.coords)):
        delta = _reduce(b - a)
        if i in opposite:
            disp.append(_HALF)
        elif delta < _HALF:
            disp.append(delta)
        else:
            disp.append(delta - 1)
    chosen = TorusGeodesic(x, tuple(disp))
    return PlannerResult(
        domain=len(opposite),
        count=2 ** len(opposite),
        rule="plus_half" if opposite else "unique",
        geodesic=chosen,
    )


def torus_local_poset(x: TorusPoint, y: TorusPoint) -> StratPoset:
    """Local stratified-covering poset at the pair (x, y).

    Only the opposite coordinates branch, so the poset is the corner poset in
    that many variables; a unique-geodesic pair yields the one-element poset.
    """
    a = len(antipodal_indices(x, y))
    if a == 0:
        return StratPoset([PosetElement("cell", 1, ("direct",))], [])
    return torus_corner_poset(a)


def torus_loop_monodromy(steps: int, x2=Fraction(1, 2)) -> tuple[int, ...]:
    """Drag a four-geodesic pair around the meridian loop on T² and track
    the geodesics by nearest-lift matching; returns the permutation.

    This is the orientable control: the result is always the identity.
    Mirrors the Klein-bottle monodromy contract, including ``steps >= 8``.
    """
    if steps < 8:
        raise ValueError("need steps >= 8 for unambiguous matching")
    x2 = _frac(x2)

    def minimal_lifts(t: Fraction) -> list[tuple[Fraction, Fraction]]:
        base = (t, x2)
        target = (_reduce(t + _HALF), _reduce(x2 + _HALF))
        # Enumerate integer translates of the target near the lifted base.
        cands = []
        for du in range(-2, 4):
            for dv in range(-2, 4):
                p = (target[0] + du, target[1] + dv)
                d = (p[0] - base[0]) ** 2 + (p[1] - base[1]) ** 2
                cands.append((d, p))
        best = min(d for d, _ in cands)
        return sorted(p for d, p in cands if d == best)

    prev = minimal_lifts(Fraction(0))
    if len(prev) != 4:
        raise RuntimeError("loop basepoint is not a four-geodesic pair")
    start = list(prev)
    total = tuple(range(4))
    for j in range(1, steps + 1):
        cur = minimal_lifts(Fraction(j, steps))
        step_perm = nearest_lift_permutation(prev, cur)
        total = tuple(total[step_perm[m]] for m in range(4))
        prev = cur
    # Close the loop: the final lifts are the initial ones shifted by (1, 0).
    shifted = [(p[0] + 1, p[1]) for p in start]
    closing = nearest_lift_permutation(shifted, prev)
    sigma: list[int] = [0, 0, 0, 0]
    for m in range(4):
        sigma[total[m]] = closing[m]
    return tuple(sigma)
