"""Minimal static SVG emitter for enclosure figures."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

EDGE_COLORS = {"beta_lo": "#1f4fbf", "beta_hi": "#1f4fbf", "alpha_lo": "#c0392b", "alpha_hi": "#c0392b"}


class Figure:
    """Accumulates primitives in data coordinates and writes SVG text.

    Parameters
    ----------
    viewport : tuple
        ``(re_lo, re_hi, im_lo, im_hi)``.
    width : int
        Pixel width; the height follows the aspect ratio.
    """

    def __init__(self, viewport, width: int = 720):
        self.x0, self.x1, self.y0, self.y1 = (float(v) for v in viewport)
        self.w = width
        self.h = max(1, int(round(width * (self.y1 - self.y0) / (self.x1 - self.x0))))
        self.items: list[str] = []

    def _px(self, z: complex) -> tuple[float, float]:
        sx = (z.real - self.x0) / (self.x1 - self.x0) * self.w
        sy = (self.y1 - z.imag) / (self.y1 - self.y0) * self.h
        return sx, sy

    def polyline(self, pts, color: str = "black", width: float = 1.0, opacity: float = 1.0) -> None:
        # half-lines reach infinity; clamp far outside the viewport
        big = 1e3 * (abs(self.x0) + abs(self.x1) + abs(self.y0) + abs(self.y1) + 1)
        pts = [complex(p) for p in pts if not np.isnan(p)]
        pts = [complex(np.clip(p.real, -big, big), np.clip(p.imag, -big, big)) for p in pts]
        if len(pts) < 2:
            return
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(self._px, pts))
        self.items.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{width}" stroke-opacity="{opacity}"/>'
        )

    def circle(self, z: complex, r: float = 3.0, color: str = "black") -> None:
        if not np.isfinite(z):
            return
        x, y = self._px(complex(z))
        self.items.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{color}"/>')

    def cross(self, z: complex, r: float = 4.0, color: str = "black") -> None:
        x, y = self._px(complex(z))
        self.items.append(
            f'<path d="M{x - r:.2f},{y - r:.2f}L{x + r:.2f},{y + r:.2f}M{x - r:.2f},{y + r:.2f}'
            f'L{x + r:.2f},{y - r:.2f}" stroke="{color}" stroke-width="1.5"/>'
        )

    def text(self, z: complex, s: str, size: int = 12) -> None:
        x, y = self._px(complex(z))
        self.items.append(f'<text x="{x:.2f}" y="{y:.2f}" font-size="{size}">{escape(s)}</text>')

    def axes(self) -> None:
        self.polyline([complex(self.x0, 0), complex(self.x1, 0)], "#999999", 0.5)
        self.polyline([complex(0, self.y0), complex(0, self.y1)], "#999999", 0.5)

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.w}" height="{self.h}" '
            f'viewBox="0 0 {self.w} {self.h}">'
        )
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.items, "</svg>"]) + "\n"


def curve_polylines(curve, params=None) -> list[list[complex]]:
    """Split a BranchCurve into polylines of consecutive valid samples, both halves."""
    sing = [0.0] if curve.kind == "beta" else [0.0, -params.d / 2 if params else math.nan]
    lines = []
    for k in range(curve.re.shape[1]):
        x = curve.re[:, k]
        ok = np.isfinite(x)
        idx = np.flatnonzero(ok)
        if not len(idx):
            continue
        cuts = np.flatnonzero(np.diff(idx) > 1)
        for s in sing:
            cuts = np.union1d(cuts, np.flatnonzero((curve.im[idx[:-1]] < s) & (curve.im[idx[1:]] > s)))
        for seg in np.split(idx, cuts + 1):
            if len(seg) > 1:
                pts = x[seg] + 1j * curve.im[seg]
                lines.append(list(pts))
                lines.append(list(-pts.real + 1j * pts.imag))
    for a, b in curve.segments:
        lines.append([a, b])
    return lines
