"""Deterministic standalone SVG line plots.

The writer is intentionally dumb: it draws exactly the numbers found in a
SeriesTable, so an SVG is always a view of the corresponding CSV and never
a second computation.  Pixel coordinates are quantized to 0.01 px and the
exact data-to-pixel affine map is recorded in a metadata comment, which
lets a reader invert every polyline vertex back to data values within one
quantization unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence
from xml.sax.saxutils import escape

from . import __version__
from .errors import DomainError
from .tables import SeriesTable

WIDTH, HEIGHT = 720.0, 480.0
BOX = (72.0, 40.0, 696.0, 424.0)  # x0, y0, x1, y1 of the plot area in px
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
N_TICKS = 5


@dataclass(frozen=True)
class FigureSpec:
    """What to draw and how to label it; columns must exist in the table."""

    figure_id: str
    title: str
    x_column: str
    y_columns: tuple
    x_label: str
    y_label: str
    legend: tuple
    params: tuple = field(default_factory=tuple)  # ((key, value-str), ...)

    def __post_init__(self):
        if not self.y_columns:
            raise DomainError("figure needs at least one y column")
        if len(self.legend) != len(self.y_columns):
            raise DomainError("legend and y_columns lengths differ")


def _data_ranges(table: SeriesTable, spec: FigureSpec):
    xs = table.column(spec.x_column)
    ys = [v for name in spec.y_columns for v in table.column(name)]
    for v in list(xs) + ys:
        if not math.isfinite(v):
            raise DomainError(f"non-finite value {v!r} cannot be plotted")
    x_min, x_max = min(xs), max(xs)
    if x_max == x_min:
        x_min, x_max = x_min - 1.0, x_max + 1.0
    y_lo, y_hi = min(ys), max(ys)
    pad = 0.05 * (y_hi - y_lo) if y_hi > y_lo else 1.0
    return x_min, x_max, y_lo - pad, y_hi + pad


def _px(v: float, lo: float, hi: float, p0: float, p1: float) -> float:
    return p0 + (v - lo) / (hi - lo) * (p1 - p0)


def render_svg(table: SeriesTable, spec: FigureSpec) -> str:
    """The full SVG document as a string."""
    missing = [c for c in (spec.x_column, *spec.y_columns) if c not in table.columns]
    if missing:
        raise DomainError(f"table lacks columns required by {spec.figure_id}: {missing}")
    x_min, x_max, y_min, y_max = _data_ranges(table, spec)
    bx0, by0, bx1, by1 = BOX
    xs = table.column(spec.x_column)

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:g}" '
        f'height="{HEIGHT:g}" viewBox="0 0 {WIDTH:g} {HEIGHT:g}">'
    )
    meta = [f"<!--dunklosc-figure", f"version: {__version__}", f"figure: {spec.figure_id}"]
    for key, value in spec.params:
        meta.append(f"param {key}: {value}")
    meta.append(f"x_column: {spec.x_column}")
    meta.append("y_columns: " + ", ".join(spec.y_columns))
    meta.append("x_range: %.17g %.17g" % (x_min, x_max))
    meta.append("y_range: %.17g %.17g" % (y_min, y_max))
    meta.append("plot_box: %g %g %g %g" % BOX)
    meta.append("-->")
    out.append("\n".join(meta))
    out.append(f'<rect width="{WIDTH:g}" height="{HEIGHT:g}" fill="white"/>')

    # gridlines and tick labels
    for i in range(N_TICKS):
        fx = x_min + (x_max - x_min) * i / (N_TICKS - 1)
        px = _px(fx, x_min, x_max, bx0, bx1)
        out.append(
            f'<line x1="{px:.2f}" y1="{by0:.2f}" x2="{px:.2f}" y2="{by1:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{px:.2f}" y="{by1 + 18:.2f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">{escape("%.6g" % fx)}</text>'
        )
        fy = y_min + (y_max - y_min) * i / (N_TICKS - 1)
        py = _px(fy, y_min, y_max, by1, by0)
        out.append(
            f'<line x1="{bx0:.2f}" y1="{py:.2f}" x2="{bx1:.2f}" y2="{py:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{bx0 - 6:.2f}" y="{py + 4:.2f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="end">{escape("%.6g" % fy)}</text>'
        )

    for idx, name in enumerate(spec.y_columns):
        color = PALETTE[idx % len(PALETTE)]
        pts = " ".join(
            "%.2f,%.2f"
            % (
                _px(x, x_min, x_max, bx0, bx1),
                _px(y, y_min, y_max, by1, by0),
            )
            for x, y in zip(xs, table.column(name))
        )
        out.append(
            f'<polyline data-series="{escape(name)}" points="{pts}" '
            f'fill="none" stroke="{color}" stroke-width="1.5"/>'
        )

    out.append(
        f'<rect x="{bx0:g}" y="{by0:g}" width="{bx1 - bx0:g}" height="{by1 - by0:g}" '
        f'fill="none" stroke="#333333" stroke-width="1"/>'
    )
    out.append(
        f'<text x="{(bx0 + bx1) / 2:.2f}" y="24" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle">{escape(spec.title)}</text>'
    )
    out.append(
        f'<text x="{(bx0 + bx1) / 2:.2f}" y="{HEIGHT - 12:.2f}" font-family="sans-serif" '
        f'font-size="13" text-anchor="middle">{escape(spec.x_label)}</text>'
    )
    out.append(
        f'<text x="18" y="{(by0 + by1) / 2:.2f}" font-family="sans-serif" font-size="13" '
        f'text-anchor="middle" transform="rotate(-90 18 {(by0 + by1) / 2:.2f})">'
        f"{escape(spec.y_label)}</text>"
    )

    # legend, top right inside the plot box
    lg_x = bx1 - 150.0
    for idx, label in enumerate(spec.legend):
        ly = by0 + 16.0 + 18.0 * idx
        color = PALETTE[idx % len(PALETTE)]
        out.append(
            f'<line x1="{lg_x:.2f}" y1="{ly:.2f}" x2="{lg_x + 24:.2f}" y2="{ly:.2f}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{lg_x + 30:.2f}" y="{ly + 4:.2f}" font-family="sans-serif" '
            f'font-size="12">{escape(label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(table: SeriesTable, spec: FigureSpec, path) -> None:
    """Render and write; I/O errors propagate to the caller."""
    if table.n_rows == 0:
        raise DomainError("refusing to plot an empty table")
    text = render_svg(table, spec)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def parse_metadata(text: str) -> dict:
    """Read back the metadata comment of a rendered SVG (used by checks)."""
    start = text.index("<!--dunklosc-figure")
    end = text.index("-->", start)
    info = {}
    for line in text[start:end].splitlines()[1:]:
        key, _, value = line.partition(":")
        info[key.strip()] = value.strip()
    return info


def parse_polylines(text: str) -> dict:
    """Series name -> list of (px, py) vertices, straight from the markup."""
    series = {}
    pos = 0
    while True:
        i = text.find("<polyline data-series=", pos)
        if i < 0:
            return series
        name_start = text.index('"', i) + 1
        name_end = text.index('"', name_start)
        name = text[name_start:name_end]
        pts_key = text.index('points="', name_end) + len('points="')
        pts_end = text.index('"', pts_key)
        pts = []
        for pair in text[pts_key:pts_end].split():
            a, b = pair.split(",")
            pts.append((float(a), float(b)))
        series[name] = pts
        pos = pts_end
