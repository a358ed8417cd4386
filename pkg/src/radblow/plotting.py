"""Static SVG plots of the weighted-momentum series.

The plot is written directly as SVG text so the output is a pure function of
its inputs: identical series and summary files produce byte-identical plots.
When a ``summary.txt`` sits next to the series file, the closed-form
comparison curve and a dashed marker at its pole T* are drawn as well.
"""

from __future__ import annotations

import csv
import math
import os

from .riccati import RiccatiBound, comparison_solution, with_initial
from .runner import CSV_COLUMNS, SUMMARY_FILE, read_summary

WIDTH = 640.0
HEIGHT = 420.0
MARGIN_LEFT = 70.0
MARGIN_RIGHT = 20.0
MARGIN_TOP = 30.0
MARGIN_BOTTOM = 50.0

SERIES_COLOR = "#1f77b4"
BOUND_COLOR = "#d62728"
MARKER_COLOR = "#555555"


def load_series(path: str) -> tuple[list[float], list[float]]:
    """Times and H values from a series CSV; strict about the column set."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_COLUMNS:
            raise ValueError(
                f"{path}: expected columns {','.join(CSV_COLUMNS)}, "
                f"got {','.join(header) if header else 'empty file'}"
            )
        t_idx = CSV_COLUMNS.index("t")
        h_idx = CSV_COLUMNS.index("H")
        times: list[float] = []
        values: list[float] = []
        for row in reader:
            if len(row) != len(CSV_COLUMNS):
                raise ValueError(f"{path}: malformed row {row!r}")
            times.append(float(row[t_idx]))
            values.append(float(row[h_idx]))
    if not times:
        raise ValueError(f"{path}: no data rows")
    return times, values


def sibling_bound(series_path: str) -> RiccatiBound | None:
    """Riccati bound reconstructed from the summary next to a series file."""
    path = os.path.join(os.path.dirname(series_path) or ".", SUMMARY_FILE)
    if not os.path.exists(path):
        return None
    fields = read_summary(path)
    try:
        a = float(fields["a"])
        b = float(fields["b"])
        h0 = float(fields["H0"])
    except (KeyError, ValueError):
        return None
    return with_initial(RiccatiBound(a=a, b=b, beta=math.sqrt(b / a) if b > 0 else 0.0), h0)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _label(x: float) -> str:
    return f"{x:.6g}"


class _Axes:
    """Linear map from data coordinates to the SVG pixel box."""

    def __init__(self, x_lo, x_hi, y_lo, y_hi):
        if x_hi <= x_lo:
            x_hi = x_lo + 1.0
        if y_hi <= y_lo:
            y_hi = y_lo + 1.0
        self.x_lo, self.x_hi = x_lo, x_hi
        self.y_lo, self.y_hi = y_lo, y_hi

    def x(self, v: float) -> float:
        frac = (v - self.x_lo) / (self.x_hi - self.x_lo)
        return MARGIN_LEFT + frac * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)

    def y(self, v: float) -> float:
        frac = (v - self.y_lo) / (self.y_hi - self.y_lo)
        return HEIGHT - MARGIN_BOTTOM - frac * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)


def _polyline(points: list[tuple[float, float]], color: str, dashed: bool = False) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    dash = ' stroke-dasharray="6,4"' if dashed else ""
    return (
        f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} '
        f'points="{coords}" />'
    )


def render_plot(series_path: str, log_h: bool = False) -> str:
    """SVG text for one series file (plus its sibling summary, if present)."""
    times, values = load_series(series_path)
    bound = sibling_bound(series_path)
    t_star = bound.T_star if bound is not None else None

    if log_h:
        pairs = [(t, math.log10(h)) for t, h in zip(times, values) if h > 0]
        if not pairs:
            raise ValueError("log scale needs at least one positive H value")
        data = pairs
    else:
        data = list(zip(times, values))

    x_hi = max(p[0] for p in data)
    if t_star is not None:
        x_hi = max(x_hi, t_star)
    y_vals = [p[1] for p in data]
    y_lo = min(min(y_vals), 0.0) if not log_h else min(y_vals)
    y_hi = max(y_vals)
    pad = 0.05 * (y_hi - y_lo) if y_hi > y_lo else 1.0
    axes = _Axes(0.0 if not log_h else min(p[0] for p in data), x_hi, y_lo - pad, y_hi + pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" '
        f'height="{HEIGHT:.0f}" viewBox="0 0 {WIDTH:.0f} {HEIGHT:.0f}">',
        f'<rect width="{WIDTH:.0f}" height="{HEIGHT:.0f}" fill="white" />',
    ]

    # frame and ticks
    x0, y0 = axes.x(axes.x_lo), axes.y(axes.y_lo)
    x1, y1 = axes.x(axes.x_hi), axes.y(axes.y_hi)
    parts.append(
        f'<path d="M {_fmt(x0)} {_fmt(y1)} L {_fmt(x0)} {_fmt(y0)} L {_fmt(x1)} '
        f'{_fmt(y0)}" fill="none" stroke="black" stroke-width="1" />'
    )
    for k in range(5):
        fx = axes.x_lo + k * (axes.x_hi - axes.x_lo) / 4
        px = axes.x(fx)
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(y0)}" x2="{_fmt(px)}" '
            f'y2="{_fmt(y0 + 5)}" stroke="black" stroke-width="1" />'
        )
        parts.append(
            f'<text x="{_fmt(px)}" y="{_fmt(y0 + 20)}" font-size="11" '
            f'text-anchor="middle" font-family="sans-serif">{_label(fx)}</text>'
        )
        fy = axes.y_lo + k * (axes.y_hi - axes.y_lo) / 4
        py = axes.y(fy)
        parts.append(
            f'<line x1="{_fmt(x0 - 5)}" y1="{_fmt(py)}" x2="{_fmt(x0)}" '
            f'y2="{_fmt(py)}" stroke="black" stroke-width="1" />'
        )
        parts.append(
            f'<text x="{_fmt(x0 - 8)}" y="{_fmt(py + 4)}" font-size="11" '
            f'text-anchor="end" font-family="sans-serif">{_label(fy)}</text>'
        )
    y_name = "log10 H" if log_h else "H"
    parts.append(
        f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(HEIGHT - 12)}" font-size="12" '
        f'text-anchor="middle" font-family="sans-serif">t</text>'
    )
    parts.append(
        f'<text x="{_fmt(x0)}" y="{_fmt(y1 - 10)}" font-size="12" '
        f'text-anchor="middle" font-family="sans-serif">{y_name}</text>'
    )

    # comparison curve, clipped to the data's vertical range
    if bound is not None and t_star is not None:
        comp: list[tuple[float, float]] = []
        t_max_curve = min(0.995 * t_star, axes.x_hi)
        for k in range(257):
            t = t_max_curve * k / 256
            h = comparison_solution(bound, t)
            if log_h and h <= 0:
                continue
            y = math.log10(h) if log_h else h
            if y > axes.y_hi:
                break
            comp.append((axes.x(t), axes.y(y)))
        if len(comp) >= 2:
            parts.append(_polyline(comp, BOUND_COLOR))
        marker_x = axes.x(t_star)
        parts.append(
            f'<line x1="{_fmt(marker_x)}" y1="{_fmt(y0)}" x2="{_fmt(marker_x)}" '
            f'y2="{_fmt(y1)}" stroke="{MARKER_COLOR}" stroke-width="1" '
            f'stroke-dasharray="4,3" />'
        )
        parts.append(
            f'<text x="{_fmt(marker_x)}" y="{_fmt(y1 - 4)}" font-size="11" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'fill="{MARKER_COLOR}">T*={_label(t_star)}</text>'
        )

    pixel_data = [(axes.x(t), axes.y(v)) for t, v in data]
    if len(pixel_data) == 1:
        x, y = pixel_data[0]
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="{SERIES_COLOR}" />')
    else:
        parts.append(_polyline(pixel_data, SERIES_COLOR))

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_plot(series_path: str, output_path: str, log_h: bool = False) -> None:
    svg = render_plot(series_path, log_h=log_h)
    with open(output_path, "w") as f:
        f.write(svg)
