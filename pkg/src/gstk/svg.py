"""Minimal self-contained SVG line charts for the CSV outputs.

Pure rendering: the chart functions take the already-computed series and
never recompute physics. Output is deterministic for identical input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["Panel", "Series", "render_chart", "write_chart"]

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
    "#aec7e8", "#ff9896", "#98df8a", "#ffbb78", "#c5b0d5",
)


@dataclass
class Series:
    label: str
    x: list
    y: list


@dataclass
class Panel:
    title: str
    x_label: str
    y_label: str
    series: list = field(default_factory=list)
    log_y: bool = False


def _nice_step(span: float) -> float:
    raw = span / 4.0
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            return mult * mag
    return 10.0 * mag


def _ticks(lo: float, hi: float) -> list[float]:
    if hi <= lo:
        return [lo]
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step) * step
    # indexed, not accumulated: a step below one ulp of the values would
    # stall an accumulating loop
    count = int(math.floor((hi - first) / step + 1e-9)) + 1
    ticks = []
    for i in range(max(count, 0)):
        t = first + i * step
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
    return ticks


def _panel_svg(panel: Panel, y_offset: int, width: int, height: int) -> list[str]:
    left, right, top, bottom = 78, 200, 42, 50
    plot_w = width - left - right
    plot_h = height - top - bottom

    points = []
    for s in panel.series:
        for x, y in zip(s.x, s.y):
            if panel.log_y and y <= 0.0:
                continue
            points.append((float(x), math.log10(y) if panel.log_y else float(y)))
    if not points:
        points = [(0.0, 0.0), (1.0, 1.0)]
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi - x_lo <= max(abs(x_lo), abs(x_hi)) * 1e-9:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    if y_hi - y_lo <= max(abs(y_lo), abs(y_hi)) * 1e-9:
        # constant series (up to rounding): pad to a readable band
        pad = max(1.0, abs(y_hi)) * 0.1
        y_lo, y_hi = y_lo - pad, y_hi + pad
    else:
        pad = 0.05 * (y_hi - y_lo)
        y_lo, y_hi = y_lo - pad, y_hi + pad

    def sx(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return y_offset + top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    out = [
        f'<text x="{left}" y="{y_offset + 24}" font-size="15" font-weight="bold">{panel.title}</text>',
        f'<rect x="{left}" y="{y_offset + top}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#444" stroke-width="1"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        px = sx(t)
        out.append(
            f'<line x1="{px:.2f}" y1="{y_offset + top + plot_h}" x2="{px:.2f}" '
            f'y2="{y_offset + top + plot_h + 5}" stroke="#444"/>'
        )
        out.append(
            f'<text x="{px:.2f}" y="{y_offset + top + plot_h + 18}" font-size="11" '
            f'text-anchor="middle">{t:.4g}</text>'
        )
    if panel.log_y:
        # decade ticks; fall back to plain ticks when the span is sub-decade
        labels = [
            (float(d), f"1e{d}")
            for d in range(int(math.floor(y_lo)), int(math.ceil(y_hi)) + 1)
            if y_lo <= d <= y_hi
        ]
        if not labels:
            labels = [(t, f"{10.0 ** t:.3g}") for t in _ticks(y_lo, y_hi)]
    else:
        labels = [(t, f"{t:.4g}") for t in _ticks(y_lo, y_hi)]
    for pos, text in labels:
        py = sy(pos)
        out.append(f'<line x1="{left - 5}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" stroke="#444"/>')
        out.append(
            f'<text x="{left - 9}" y="{py + 4:.2f}" font-size="11" text-anchor="end">{text}</text>'
        )
    out.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{y_offset + top + plot_h + 38}" font-size="12" '
        f'text-anchor="middle">{panel.x_label}</text>'
    )
    out.append(
        f'<text x="22" y="{y_offset + top + plot_h / 2:.2f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 22 {y_offset + top + plot_h / 2:.2f})">{panel.y_label}</text>'
    )

    for i, s in enumerate(panel.series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = []
        for x, y in zip(s.x, s.y):
            if panel.log_y and y <= 0.0:
                continue
            yy = math.log10(y) if panel.log_y else float(y)
            pts.append(f"{sx(float(x)):.2f},{sy(yy):.2f}")
        if len(pts) == 1:
            cx, cy = pts[0].split(",")
            out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="{color}"/>')
        elif pts:
            out.append(
                f'<polyline points="{" ".join(pts)}" fill="none" stroke="{color}" stroke-width="1.6"/>'
            )
        ly = y_offset + top + 14 + 16 * i
        lx = left + plot_w + 12
        out.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(f'<text x="{lx + 28}" y="{ly}" font-size="11">{s.label}</text>')
    return out


def render_chart(panels: list[Panel], width: int = 860, panel_height: int = 330) -> str:
    """Render stacked line-chart panels as an SVG document string."""
    height = panel_height * len(panels)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i, panel in enumerate(panels):
        parts.extend(_panel_svg(panel, i * panel_height, width, panel_height))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_chart(path: str | Path, panels: list[Panel], width: int = 860) -> Path:
    path = Path(path)
    path.write_text(render_chart(panels, width=width))
    return path
