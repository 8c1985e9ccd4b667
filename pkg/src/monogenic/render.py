"""Canonical JSON output, text rendering and polygon plots.

Every report leaves the CLI through ``canonical_json``: keys sorted, every
integer written as a decimal string, so output is byte-identical across runs.
The text format is produced from that same JSON value.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import floor

from .newton import NewtonPolygon


def canonicalize(value):
    """Integers to decimal strings, fractions to "num/den", tuples to lists."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): canonicalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonicalize(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def canonical_json(value) -> str:
    return json.dumps(canonicalize(value), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _text_lines(value, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, str) and "\n" in item:
                out.append(f"{pad}{key}:")
                out.extend(pad + "  " + line for line in item.rstrip("\n").split("\n"))
            elif isinstance(item, (dict, list)) and item:
                out.append(f"{pad}{key}:")
                out.extend(_text_lines(item, indent + 1))
            else:
                out.append(f"{pad}{key}: {_scalar(item)}")
        return out
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [pad + "[" + ", ".join(_scalar(v) for v in value) + "]"]
        out = []
        for v in value:
            sub = _text_lines(v, indent + 1)
            out.append(pad + "- " + sub[0].lstrip())
            out.extend(sub[1:])
        return out
    return [pad + _scalar(value)]


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def render_text(value) -> str:
    return "\n".join(_text_lines(canonicalize(value), 0)) + "\n"


def _lattice_points(polygon: NewtonPolygon) -> set[tuple[int, int]]:
    pts = set()
    if not polygon.vertices:
        return pts
    for x in range(max(1, polygon.vertices[0][0]), polygon.vertices[-1][0] + 1):
        h = polygon.height(x)
        if h is not None:
            pts.update((x, y) for y in range(1, floor(h) + 1))
    return pts


def ascii_polygon(polygon: NewtonPolygon) -> str:
    """Grid plot: o vertex, * other point, + counted lattice point, . polygon edge."""
    if not polygon.points:
        return "(empty polygon)\n"
    xmax = max(x for x, _ in polygon.points)
    ymax = max(y for _, y in polygon.points)
    vertices = set(polygon.vertices)
    points = set(polygon.points)
    lattice = _lattice_points(polygon)
    width = len(str(ymax))
    rows = []
    for y in range(ymax, -1, -1):
        cells = []
        for x in range(xmax + 1):
            h = polygon.height(x)
            if (x, y) in vertices:
                cells.append("o")
            elif (x, y) in points:
                cells.append("*")
            elif (x, y) in lattice:
                cells.append("+")
            elif h is not None and h == y:
                cells.append(".")
            else:
                cells.append(" ")
        rows.append(f"{y:>{width}} |" + " ".join(cells).rstrip())
    rows.append(" " * width + " +" + "-" * (2 * xmax + 1))
    rows.append(" " * (width + 2) + " ".join(str(x % 10) for x in range(xmax + 1)))
    rows.append(f"p = {polygon.p}; o vertex, * point, + lattice point counted, . edge")
    return "\n".join(rows) + "\n"


def svg_polygon(polygon: NewtonPolygon, unit: int = 40) -> str:
    """Standalone SVG of the points, the lower hull and the counted lattice points."""
    xmax = max((x for x, _ in polygon.points), default=1) or 1
    ymax = max((y for _, y in polygon.points), default=1) or 1
    margin = unit
    w = xmax * unit + 2 * margin
    h = ymax * unit + 2 * margin

    def sx(x) -> str:
        return f"{margin + x * unit:g}"

    def sy(y) -> str:
        return f"{h - margin - y * unit:g}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<title>Newton polygon at p = {polygon.p}</title>',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(xmax)}" y2="{sy(0)}" stroke="black"/>',
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(0)}" y2="{sy(ymax)}" stroke="black"/>',
    ]
    for x in range(xmax + 1):
        out.append(f'<text x="{sx(x)}" y="{float(sy(0)) + 16:g}" font-size="12" text-anchor="middle">{x}</text>')
    for y in range(ymax + 1):
        out.append(f'<text x="{margin - 8}" y="{float(sy(y)) + 4:g}" font-size="12" text-anchor="end">{y}</text>')
    for x, y in sorted(_lattice_points(polygon)):
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="2" fill="gray"/>')
    if polygon.vertices:
        path = " ".join(f"{sx(x)},{sy(y)}" for x, y in polygon.vertices)
        out.append(f'<polyline points="{path}" fill="none" stroke="blue" stroke-width="2"/>')
    vertices = set(polygon.vertices)
    for x, y in polygon.points:
        fill = "blue" if (x, y) in vertices else "black"
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="4" fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
