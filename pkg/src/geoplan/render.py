"""Artifact rendering: canonical JSON, SVG figures, CSV sampling rows.

Everything here is deterministic: rationals are serialized exactly as
``p/q`` strings, floats appear only in SVG coordinates with a fixed format,
keys are sorted, and no environment-dependent data (timestamps, paths,
versions) is embedded - so artifacts are byte-stable across runs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "RenderSpec",
    "dump_csv",
    "dump_json",
    "fraction_str",
    "svg_document",
    "svg_path_chart",
]


def fraction_str(value: Fraction) -> str:
    """Exact canonical string for a rational: ``p`` or ``p/q``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def point_str(point) -> str:
    return ",".join(fraction_str(c) for c in point)


def to_jsonable(obj):
    """Recursively convert exact data into JSON-serializable structures."""
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dump_json(data) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True) + "\n"


def dump_csv(rows: list[dict], columns: list[str]) -> str:
    """CSV text with a fixed column order and newline discipline."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])
    return buffer.getvalue()


@dataclass(frozen=True)
class RenderSpec:
    """Where and how to emit an artifact."""

    out: str | None = None
    format: str = "json"
    resolution: int = 8

    def __post_init__(self) -> None:
        if self.format not in ("json", "svg", "csv"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.resolution < 2:
            raise ValueError("resolution must be >= 2")


def _fmt(x: float) -> str:
    out = f"{x:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _sample(points: list[tuple[float, float]], resolution: int) -> list[tuple[float, float]]:
    """Resample a polyline with ``resolution`` points per segment."""
    out: list[tuple[float, float]] = [points[0]]
    for a, b in zip(points, points[1:]):
        for k in range(1, resolution):
            t = k / (resolution - 1)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return out


@dataclass
class _Figure:
    """Collects SVG elements in chart coordinates (y grows upward)."""

    polylines: list[tuple[list[tuple[float, float]], str]]
    circles: list[tuple[float, float, float, str]]

    def bounds(self) -> tuple[float, float, float, float]:
        xs = [p[0] for line, _ in self.polylines for p in line]
        ys = [p[1] for line, _ in self.polylines for p in line]
        xs += [c[0] for c in self.circles]
        ys += [c[1] for c in self.circles]
        if not xs:
            xs, ys = [0.0, 1.0], [0.0, 1.0]
        return min(xs), min(ys), max(xs), max(ys)


_STYLE = (
    "polyline{fill:none;stroke-width:0.01}"
    ".domain{stroke:#888;stroke-dasharray:0.03,0.02}"
    ".path{stroke:#000}"
    ".cut{stroke:#c00}"
    ".face{stroke:#48c}"
    "circle{fill:#c00}"
)


def svg_document(figure: _Figure, scale: float = 200.0) -> str:
    """Serialize a figure to standalone SVG 1.1 (chart y-axis points up)."""
    x0, y0, x1, y1 = figure.bounds()
    margin = 0.1 * max(x1 - x0, y1 - y0, 1.0)
    x0, y0, x1, y1 = x0 - margin, y0 - margin, x1 + margin, y1 + margin
    width = _fmt((x1 - x0) * scale)
    height = _fmt((y1 - y0) * scale)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}">',
        f"<style>{_STYLE}</style>",
    ]
    for pts, cls in figure.polylines:
        coords = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in pts)
        lines.append(f'<polyline class="{cls}" points="{coords}"/>')
    for cx, cy, r, cls in figure.circles:
        lines.append(
            f'<circle class="{cls}" cx="{_fmt(cx)}" cy="{_fmt(-cy)}" r="{_fmt(r)}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _square(x0: float, y0: float, x1: float, y1: float) -> list[tuple[float, float]]:
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)]


def svg_path_chart(
    segments_2d: list[list[tuple[Fraction, ...]]],
    cut_polylines: list[list[tuple[Fraction, ...]]],
    marked_points: list[tuple[tuple[Fraction, ...], int]],
    spec: RenderSpec,
    domain: tuple[float, float, float, float] = (0.0, 0.0, 1.0, 1.0),
    face_outlines: list[list[tuple[Fraction, ...]]] | None = None,
) -> str:
    """Universal-cover chart figure: fundamental domain outline, geodesic
    segments, cut-locus polylines, and multiplicity-scaled vertex marks."""
    fig = _Figure(polylines=[], circles=[])
    fig.polylines.append((_square(*domain), "domain"))
    for outline in face_outlines or []:
        fig.polylines.append(
            ([(float(p[0]), float(p[1])) for p in outline], "face")
        )
    for polyline in cut_polylines:
        pts = _sample([(float(p[0]), float(p[1])) for p in polyline], spec.resolution)
        fig.polylines.append((pts, "cut"))
    for segment in segments_2d:
        pts = _sample([(float(p[0]), float(p[1])) for p in segment], spec.resolution)
        fig.polylines.append((pts, "path"))
    for point, multiplicity in marked_points:
        fig.circles.append(
            (float(point[0]), float(point[1]), 0.01 + 0.005 * multiplicity, "vertex")
        )
    return svg_document(fig)
