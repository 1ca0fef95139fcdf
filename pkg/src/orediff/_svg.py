"""Tiny static SVG line-plot writer. Dependency free and byte deterministic."""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#17becf")

_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 24, 42, 52


def _finite_range(values: list[np.ndarray], extra: float | None) -> tuple[float, float]:
    lo, hi = math.inf, -math.inf
    for arr in values:
        finite = arr[np.isfinite(arr)]
        if finite.size:
            lo = min(lo, float(finite.min()))
            hi = max(hi, float(finite.max()))
    if extra is not None:
        lo = min(lo, extra)
        hi = max(hi, extra)
    if not math.isfinite(lo):
        lo, hi = 0.0, 1.0
    if lo == hi:
        pad = abs(lo) if lo else 1.0
        lo, hi = lo - 0.05 * pad - 1e-12, hi + 0.05 * pad + 1e-12
    return lo, hi


def write_line_plot(path: str | Path, x, series, *, title: str = "",
                    xlabel: str = "", ylabel: str = "", hline: float | None = None,
                    width: int = 960, height: int = 480) -> None:
    """Write polyline plots of (label, values) pairs against x to an SVG file.

    Non-finite values split the polyline into segments. hline draws a dashed
    horizontal reference line (e.g. an error bound).
    """
    x = np.asarray(x, dtype=np.float64)
    series = [(label, np.asarray(v, dtype=np.float64)) for label, v in series]
    for label, v in series:
        if v.shape != x.shape:
            raise ValueError(f"series {label!r} length does not match x")
    x_lo, x_hi = _finite_range([x], None)
    y_lo, y_hi = _finite_range([v for _, v in series], hline)

    plot_w = width - _MARGIN_L - _MARGIN_R
    plot_h = height - _MARGIN_T - _MARGIN_B

    def px(v: float) -> float:
        return _MARGIN_L + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v: float) -> float:
        return _MARGIN_T + (y_hi - v) / (y_hi - y_lo) * plot_h

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
           f'<rect width="{width}" height="{height}" fill="white"/>']
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" '
                   f'font-size="15">{title}</text>')

    # Axes box and ticks.
    out.append(f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
               f'fill="none" stroke="#333" stroke-width="1"/>')
    for i in range(6):
        xv = x_lo + (x_hi - x_lo) * i / 5
        yv = y_lo + (y_hi - y_lo) * i / 5
        xp, yp = px(xv), py(yv)
        out.append(f'<line x1="{xp:.2f}" y1="{_MARGIN_T + plot_h}" x2="{xp:.2f}" '
                   f'y2="{_MARGIN_T + plot_h + 5}" stroke="#333"/>')
        out.append(f'<text x="{xp:.2f}" y="{_MARGIN_T + plot_h + 18}" '
                   f'text-anchor="middle">{xv:.4g}</text>')
        out.append(f'<line x1="{_MARGIN_L - 5}" y1="{yp:.2f}" x2="{_MARGIN_L}" '
                   f'y2="{yp:.2f}" stroke="#333"/>')
        out.append(f'<text x="{_MARGIN_L - 8}" y="{yp + 4:.2f}" '
                   f'text-anchor="end">{yv:.4g}</text>')
    if xlabel:
        out.append(f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{height - 12}" '
                   f'text-anchor="middle">{xlabel}</text>')
    if ylabel:
        yc = _MARGIN_T + plot_h / 2
        out.append(f'<text x="16" y="{yc:.1f}" text-anchor="middle" '
                   f'transform="rotate(-90 16 {yc:.1f})">{ylabel}</text>')

    if hline is not None:
        yp = py(hline)
        out.append(f'<line x1="{_MARGIN_L}" y1="{yp:.2f}" x2="{_MARGIN_L + plot_w}" '
                   f'y2="{yp:.2f}" stroke="#555" stroke-dasharray="6 4"/>')

    for idx, (label, v) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        finite = np.isfinite(v)
        pts: list[str] = []
        for i in range(x.size):
            if finite[i]:
                pts.append(f"{px(x[i]):.2f},{py(v[i]):.2f}")
            elif pts:
                out.append(f'<polyline points="{" ".join(pts)}" fill="none" '
                           f'stroke="{color}" stroke-width="1.3"/>')
                pts = []
        if pts:
            out.append(f'<polyline points="{" ".join(pts)}" fill="none" '
                       f'stroke="{color}" stroke-width="1.3"/>')
        # Legend entry.
        lx = _MARGIN_L + 10
        ly = _MARGIN_T + 16 + 16 * idx
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 28}" y="{ly}">{label}</text>')

    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")
