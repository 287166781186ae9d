"""Exact piecewise-linear path metrics.

Paths are polylines with rational vertices in a Euclidean chart of any
dimension and rational parameter breakpoints on [0, 1].  Every decision made
by this module (geodesic tests, sup-distance comparisons, reparametrization)
reduces to exact rational arithmetic on *squared* lengths; square roots are
taken only for human-facing reports, never inside a predicate.

The exactness policy, concretely:

* squared chord lengths are always exact ``Fraction`` values;
* cumulative length fractions (and hence constant-speed parameters) are exact
  rationals whenever all chord lengths have pairwise rational ratios -- which
  includes every collinear polyline and every polyline with rational-length
  chords -- and otherwise fall back to a deterministic ``APPROX_DIGITS``-digit
  integer-sqrt approximation;
* tolerance comparisons like ``|sqrt(a) - sqrt(b)| <= tol`` are decided by
  squaring, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

__all__ = [
    "APPROX_DIGITS",
    "Polyline",
    "SpeedProfile",
    "chord_sq_lengths",
    "dist_sq",
    "is_geodesic",
    "path_length",
    "reparametrize_constant_speed",
    "speed_profile",
    "sqrt_approx",
    "sqrt_diff_within",
    "sqrt_exact",
    "sqrt_leq_sqrt_sum",
    "sqrt_within",
    "sup_distance",
    "sup_distance_sq",
]

#: Significant digits used when an irrational length must be reported.
APPROX_DIGITS = 30

Coords = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass Fraction, int or str")
    return Fraction(x)


def dist_sq(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Exact squared Euclidean distance between two rational points."""
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return sum(((p - q) * (p - q) for p, q in zip(a, b)), Fraction(0))


def sqrt_exact(x: Fraction) -> Fraction | None:
    """Rational square root of ``x`` if one exists, else ``None``."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def sqrt_approx(x: Fraction, digits: int = APPROX_DIGITS) -> Fraction:
    """Deterministic rational approximation of sqrt(x), floor at ``digits``."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    exact = sqrt_exact(x)
    if exact is not None:
        return exact
    p, q = x.numerator, x.denominator
    scale = 10 ** digits
    # sqrt(p/q) = sqrt(p*q)/q, computed on integers.
    return Fraction(isqrt(p * q * scale * scale), q * scale)


def sqrt_diff_within(a_sq: Fraction, b_sq: Fraction, tol: Fraction) -> bool:
    """Decide ``|sqrt(a_sq) - sqrt(b_sq)| <= tol`` exactly."""
    a, b, t = Fraction(a_sq), Fraction(b_sq), Fraction(tol)
    if a < 0 or b < 0 or t < 0:
        raise ValueError("arguments must be nonnegative")
    s = a + b - t * t
    if s <= 0:
        return True
    return s * s <= 4 * a * b


def sqrt_within(a_sq: Fraction, target: Fraction, tol: Fraction) -> bool:
    """Decide ``|sqrt(a_sq) - target| <= tol`` exactly (target rational)."""
    a, c, t = Fraction(a_sq), Fraction(target), Fraction(tol)
    if a < 0 or t < 0:
        raise ValueError("arguments must be nonnegative")
    hi = c + t
    if hi < 0 or a > hi * hi:
        return False
    lo = c - t
    return lo <= 0 or a >= lo * lo


def sqrt_leq_sqrt_sum(a_sq: Fraction, b_sq: Fraction, c_sq: Fraction) -> bool:
    """Decide ``sqrt(a_sq) <= sqrt(b_sq) + sqrt(c_sq)`` exactly."""
    a, b, c = Fraction(a_sq), Fraction(b_sq), Fraction(c_sq)
    if a < 0 or b < 0 or c < 0:
        raise ValueError("arguments must be nonnegative")
    s = a - b - c
    if s <= 0:
        return True
    return s * s <= 4 * b * c


class Polyline:
    """A piecewise-linear path: rational vertices plus parameter breakpoints.

    ``params`` must be strictly increasing rationals from 0 to 1, one per
    vertex.  Consecutive vertices must differ, except for the constant path,
    which is represented by all-equal vertices.
    """

    __slots__ = ("vertices", "params")

    def __init__(self, vertices: Iterable[Sequence], params: Iterable | None = None):
        verts = tuple(tuple(_frac(c) for c in v) for v in vertices)
        if len(verts) < 2:
            raise ValueError("a polyline needs at least two vertices")
        dim = len(verts[0])
        if dim < 1 or any(len(v) != dim for v in verts):
            raise ValueError("vertices must share a positive dimension")
        if params is None:
            n = len(verts) - 1
            ps = tuple(Fraction(k, n) for k in range(n + 1))
        else:
            ps = tuple(_frac(t) for t in params)
        if len(ps) != len(verts):
            raise ValueError("need exactly one parameter per vertex")
        if ps[0] != 0 or ps[-1] != 1:
            raise ValueError("parameters must start at 0 and end at 1")
        if any(ps[i] >= ps[i + 1] for i in range(len(ps) - 1)):
            raise ValueError("parameters must be strictly increasing")
        constant = all(v == verts[0] for v in verts)
        if not constant and any(
            verts[i] == verts[i + 1] for i in range(len(verts) - 1)
        ):
            raise ValueError("repeated consecutive vertices (only the constant path may repeat)")
        self.vertices = verts
        self.params = ps

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    @property
    def is_constant(self) -> bool:
        return all(v == self.vertices[0] for v in self.vertices)

    def evaluate(self, t) -> Coords:
        """Exact point at parameter ``t`` in [0, 1]."""
        t = _frac(t)
        if not 0 <= t <= 1:
            raise ValueError("parameter outside [0, 1]")
        ps = self.params
        lo, hi = 0, len(ps) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ps[mid] <= t:
                lo = mid
            else:
                hi = mid
        a, b = self.vertices[lo], self.vertices[hi]
        s = (t - ps[lo]) / (ps[hi] - ps[lo])
        return tuple(x + s * (y - x) for x, y in zip(a, b))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polyline)
            and self.vertices == other.vertices
            and self.params == other.params
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.params))

    def __repr__(self) -> str:
        return f"Polyline(vertices={self.vertices!r}, params={self.params!r})"


@dataclass(frozen=True)
class SpeedProfile:
    """Cumulative length fractions at a polyline's breakpoints.

    ``exact`` records whether the fractions are exact rationals (chord lengths
    had pairwise rational ratios) or ``APPROX_DIGITS``-digit approximations.
    """

    values: tuple[Fraction, ...]
    exact: bool


def chord_sq_lengths(p: Polyline) -> tuple[Fraction, ...]:
    """Exact squared lengths of the chords of ``p``."""
    return tuple(
        dist_sq(p.vertices[i], p.vertices[i + 1]) for i in range(len(p.vertices) - 1)
    )


def speed_profile(p: Polyline) -> SpeedProfile:
    """Cumulative length fractions of ``p``, exact whenever possible."""
    if p.is_constant:
        return SpeedProfile(values=p.params, exact=True)
    sq = chord_sq_lengths(p)
    base = sq[0]
    ratios = [sqrt_exact(s / base) for s in sq]
    if all(r is not None for r in ratios):
        lengths = ratios  # chord i has length ratios[i] * sqrt(base)
        exact = True
    else:
        lengths = [sqrt_approx(s) for s in sq]
        exact = False
    total = sum(lengths, Fraction(0))
    acc = Fraction(0)
    values = [Fraction(0)]
    for length in lengths:
        acc += length
        values.append(acc / total)
    values[-1] = Fraction(1)
    return SpeedProfile(values=tuple(values), exact=exact)


def path_length(p: Polyline) -> Fraction:
    """Length of ``p``: exact when every chord length is rational, else a
    deterministic ``APPROX_DIGITS``-digit approximation."""
    total = Fraction(0)
    for s in chord_sq_lengths(p):
        r = sqrt_exact(s)
        total += r if r is not None else sqrt_approx(s)
    return total


def reparametrize_constant_speed(p: Polyline) -> Polyline:
    """Same vertex sequence with parameters equal to cumulative length
    fractions.  The constant path is returned unchanged."""
    if p.is_constant:
        return p
    return Polyline(p.vertices, speed_profile(p).values)


def _speed_sq(p: Polyline) -> Fraction:
    """Exact squared speed constant for the geodesic test.

    When chord ratios are rational the squared total length is rational and is
    used directly; otherwise the test falls back to the squared endpoint
    distance, which agrees with the length for every actual geodesic.
    """
    if p.is_constant:
        return Fraction(0)
    sq = chord_sq_lengths(p)
    base = sq[0]
    ratios = [sqrt_exact(s / base) for s in sq]
    if all(r is not None for r in ratios):
        total = sum(ratios, Fraction(0))
        return total * total * base
    return dist_sq(p.vertices[0], p.vertices[-1])


def is_geodesic(p: Polyline, samples: int = 32, tol=Fraction(0)) -> bool:
    """Test whether ``p`` runs at constant speed along distance-realizing
    lines in its chart: ``d(p(t), p(t')) = lambda * |t - t'|`` on a uniform
    parameter grid (breakpoints are always included in the grid).

    With ``tol == 0`` the test is exact; it compares squared distances, so a
    straight segment passes exactly regardless of irrational length.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    tol = _frac(tol)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    lam_sq = _speed_sq(p)
    grid = sorted(
        {Fraction(k, samples - 1) for k in range(samples)} | set(p.params)
    )
    points = [p.evaluate(t) for t in grid]
    for i in range(len(grid)):
        for j in range(i + 1, len(grid)):
            a = dist_sq(points[i], points[j])
            dt = grid[j] - grid[i]
            b = lam_sq * dt * dt
            if tol == 0:
                if a != b:
                    return False
            elif not sqrt_diff_within(a, b, tol):
                return False
    return True


def _merged_grid(p: Polyline, q: Polyline, samples: int) -> list[Fraction]:
    grid = set(p.params) | set(q.params)
    if samples >= 2:
        grid |= {Fraction(k, samples - 1) for k in range(samples)}
    return sorted(grid)


def sup_distance_sq(p: Polyline, q: Polyline, samples: int = 0) -> Fraction:
    """Exact squared sup distance between two polylines on the merged
    breakpoint grid (plus a uniform grid when ``samples >= 2``).

    Both paths are affine between merged breakpoints, where the squared
    distance is convex in the parameter, so its maximum is attained at a
    breakpoint; the returned value is therefore the exact squared sup.
    """
    if p.dimension != q.dimension:
        raise ValueError("polylines live in different charts")
    return max(dist_sq(p.evaluate(t), q.evaluate(t)) for t in _merged_grid(p, q, samples))


def sup_distance(p: Polyline, q: Polyline, samples: int = 0) -> float:
    """Sup distance as a float report; use :func:`sup_distance_sq` to compare
    exactly."""
    import math

    return math.sqrt(float(sup_distance_sq(p, q, samples)))
