"""Deterministic SVG 1.1 emission for phase-plane and time plots.

Pure functions of the trajectory samples: fixed canvas, fixed axes
([0,1]x[0,1] for phase plots, [0,t_end]x[0,1] for time plots), polyline
geometry only. No plotting library involved, so byte-identical output
for identical input.
"""
from __future__ import annotations

import numpy as np

WIDTH = 640
HEIGHT = 480
MARGIN = 50

_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">\n'
)


def _x_px(frac: float) -> float:
    return MARGIN + frac * (WIDTH - 2 * MARGIN)


def _y_px(frac: float) -> float:
    return HEIGHT - MARGIN - frac * (HEIGHT - 2 * MARGIN)


def _polyline(xs, ys, color: str) -> str:
    pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(xs, ys))
    return (f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{pts}"/>\n')


def _axes(x_label: str, y_label: str, x_max_label: str) -> str:
    x0, y0 = _x_px(0.0), _y_px(0.0)
    x1, y1 = _x_px(1.0), _y_px(1.0)
    parts = [
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>\n',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>\n',
        f'<text x="{x1}" y="{y0 + 30}" text-anchor="end" font-size="12">{x_label}</text>\n',
        f'<text x="{x0 - 35}" y="{y1}" font-size="12">{y_label}</text>\n',
        f'<text x="{x0 - 5}" y="{y0 + 15}" font-size="10">0</text>\n',
        f'<text x="{x1}" y="{y0 + 15}" text-anchor="end" font-size="10">{x_max_label}</text>\n',
        f'<text x="{x0 - 15}" y="{y1 + 5}" font-size="10">1</text>\n',
    ]
    return "".join(parts)


def phase_svg(times: np.ndarray, states: np.ndarray) -> str:
    """Phase-plane polyline of (u, v) samples on fixed [0,1]x[0,1] axes."""
    body = _axes("u", "v", "1")
    body += _polyline([_x_px(u) for u in states[:, 0]],
                      [_y_px(v) for v in states[:, 1]], "#1f3d99")
    return _HEADER + body + "</svg>\n"


def time_svg(times: np.ndarray, states: np.ndarray, t_end: float) -> str:
    """u(t) and v(t) polylines on fixed [0,t_end]x[0,1] axes."""
    fr = times / t_end
    body = _axes("t (model units)", "density", f"{t_end:g}")
    body += _polyline([_x_px(f) for f in fr], [_y_px(u) for u in states[:, 0]], "#b02a2a")
    body += _polyline([_x_px(f) for f in fr], [_y_px(v) for v in states[:, 1]], "#1f3d99")
    return _HEADER + body + "</svg>\n"
