"""Minimal deterministic SVG line charts (no plotting framework).

Emits axes, tick labels, one polyline, optional peak markers, and a
metadata line carrying the scenario hash, with fixed float formatting so
identical inputs give byte-identical files.
"""

from __future__ import annotations

import math
from pathlib import Path

WIDTH, HEIGHT = 900, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 50


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _ticks(lo: float, hi: float, target: int = 8) -> list:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min((m for m in (1.0, 2.0, 5.0, 10.0) if m * mag >= raw),
               default=10.0) * mag
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-12 * span:
        ticks.append(0.0 if abs(v) < 1e-12 * span else v)
        v += step
    return ticks


def line_chart(path, x, y, peaks=None, title: str = "",
               xlabel: str = "", ylabel: str = "", meta: str = "") -> None:
    x = list(map(float, x))
    y = list(map(float, y))
    x_lo, x_hi = min(x), max(x)
    y_lo, y_hi = min(y), max(y)
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    def sx(v):
        return MARGIN_L + (v - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_L - MARGIN_R)

    def sy(v):
        return HEIGHT - MARGIN_B - (v - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_T - MARGIN_B)

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
               f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">')
    if meta:
        out.append(f"  <desc>{meta}</desc>")
    out.append(f'  <rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" '
               'fill="white"/>')
    if title:
        out.append(f'  <text x="{WIDTH // 2}" y="24" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="16">{title}</text>')
    # axes
    x0, y0 = MARGIN_L, HEIGHT - MARGIN_B
    out.append(f'  <line x1="{x0}" y1="{MARGIN_T}" x2="{x0}" y2="{y0}" '
               'stroke="black"/>')
    out.append(f'  <line x1="{x0}" y1="{y0}" x2="{WIDTH - MARGIN_R}" '
               f'y2="{y0}" stroke="black"/>')
    for tv in _ticks(x_lo, x_hi):
        px = sx(tv)
        out.append(f'  <line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" '
                   f'y2="{y0 + 5}" stroke="black"/>')
        out.append(f'  <text x="{px:.2f}" y="{y0 + 20}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{_fmt(tv)}</text>')
    for tv in _ticks(y_lo, y_hi, target=6):
        py = sy(tv)
        out.append(f'  <line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" '
                   f'y2="{py:.2f}" stroke="black"/>')
        out.append(f'  <text x="{x0 - 8}" y="{py + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{_fmt(tv)}</text>')
    if xlabel:
        out.append(f'  <text x="{(MARGIN_L + WIDTH - MARGIN_R) // 2}" '
                   f'y="{HEIGHT - 12}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="13">{xlabel}</text>')
    if ylabel:
        out.append(f'  <text x="18" y="{(MARGIN_T + y0) // 2}" '
                   'text-anchor="middle" font-family="sans-serif" '
                   f'font-size="13" transform="rotate(-90 18 '
                   f'{(MARGIN_T + y0) // 2})">{ylabel}</text>')
    pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
    out.append(f'  <polyline points="{pts}" fill="none" stroke="#1f4e9c" '
               'stroke-width="1.2"/>')
    if peaks:
        y_by_x = dict(zip(x, y))
        for pt in peaks:
            # peak time may be sub-sample refined; interpolate marker height
            yy = y_by_x.get(pt)
            if yy is None:
                yy = _interp(x, y, pt)
            out.append(f'  <circle cx="{sx(pt):.2f}" cy="{sy(yy):.2f}" r="3.5" '
                       'fill="none" stroke="#c23b22" stroke-width="1.5"/>')
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")


def _interp(x, y, v):
    if v <= x[0]:
        return y[0]
    for i in range(1, len(x)):
        if v <= x[i]:
            f = (v - x[i - 1]) / (x[i] - x[i - 1])
            return y[i - 1] + f * (y[i] - y[i - 1])
    return y[-1]
