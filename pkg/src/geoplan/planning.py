"""Shared planner-output records and geodesic-tracking helpers.

The space modules return a :class:`PlannerResult` from their ``*_plan``
functions, and the loop-monodromy routines track minimal lifts step by step
with :func:`nearest_lift_permutation`, refusing to guess when a matching is
ambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .metric_core import dist_sq

__all__ = [
    "AmbiguousMatchError",
    "PlannerResult",
    "compose_permutations",
    "identity_permutation",
    "nearest_lift_permutation",
    "permutation_cycles",
    "permutation_order",
]


@dataclass(frozen=True)
class PlannerResult:
    """Outcome of a planner query: the chosen geodesic and its context.

    ``domain`` is the index of the planner domain the pair falls in (0 for
    the open dense cell), ``count`` the total number of minimizing geodesics,
    ``rule`` a short human-readable tag for the tie-breaking rule applied.
    """

    domain: int
    count: int
    rule: str
    geodesic: Any


class AmbiguousMatchError(RuntimeError):
    """Raised when nearest-lift tracking cannot decide a matching."""


def nearest_lift_permutation(
    prev: Sequence[Sequence[Fraction]],
    new: Sequence[Sequence[Fraction]],
) -> tuple[int, ...]:
    """Match each new lift to its strictly nearest previous lift.

    Returns ``perm`` with ``perm[j] = i`` meaning ``new[j]`` continues
    ``prev[i]``.  Raises :class:`AmbiguousMatchError` on a distance tie or if
    the assignment fails to be a bijection; callers control step size so that
    an honest error beats a silent wrong permutation.
    """
    if len(prev) != len(new):
        raise AmbiguousMatchError(
            f"lift count changed from {len(prev)} to {len(new)}"
        )
    perm: list[int] = []
    for j, q in enumerate(new):
        dists = [dist_sq(p, q) for p in prev]
        best = min(dists)
        hits = [i for i, d in enumerate(dists) if d == best]
        if len(hits) != 1:
            raise AmbiguousMatchError(
                f"new lift {j} is equidistant from previous lifts {hits}"
            )
        perm.append(hits[0])
    if len(set(perm)) != len(perm):
        raise AmbiguousMatchError("nearest-lift assignment is not a bijection")
    return tuple(perm)


def identity_permutation(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def compose_permutations(
    first: Sequence[int], second: Sequence[int]
) -> tuple[int, ...]:
    """Apply ``first`` then ``second``: result[j] = first[second[j]].

    With the nearest-lift convention ``perm[j] = parent of new j``, composing
    step permutations in order yields, for each final lift, its original
    ancestor.
    """
    if len(first) != len(second):
        raise ValueError("permutation sizes differ")
    return tuple(first[second[j]] for j in range(len(second)))


def permutation_cycles(perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Disjoint cycles, each rotated to start at its smallest element."""
    seen: set[int] = set()
    cycles: list[tuple[int, ...]] = []
    for start in range(len(perm)):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        cur = perm[start]
        while cur != start:
            cycle.append(cur)
            seen.add(cur)
            cur = perm[cur]
        cycles.append(tuple(cycle))
    return tuple(sorted(cycles))


def permutation_order(perm: Sequence[int]) -> int:
    from math import lcm

    return lcm(*(len(c) for c in permutation_cycles(perm))) if perm else 1
