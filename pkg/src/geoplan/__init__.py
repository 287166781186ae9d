"""Exact geodesic counting, cut loci and motion planners on flat spaces.

Subpackages cover polyline metrics (``metric_core``), the flat n-torus
(``flat_torus``), the flat Klein bottle (``klein_bottle``), the boundary of
the unit cube (``cube_sphere``), and the stratified-covering poset engine for
planner-count bounds (``strat_cover``).  Everything is rational arithmetic;
square roots appear only in final readouts.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
