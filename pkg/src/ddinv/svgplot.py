"""Minimal hand-rolled SVG output for the simulate command.

Only needs polygons, polylines, circles and text, so no plotting library.
The state-plane scene shows the constraint set, its contracted copies, and
a trajectory; the input scene shows the input signal against its bounds.
"""

from __future__ import annotations

import numpy as np

WIDTH = 640
HEIGHT = 480
MARGIN_FRAC = 0.10
SHRINK_FLOOR = 0.05


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Frame:
    """World-to-screen mapping with a flipped y axis."""

    def __init__(self, xlim, ylim, width=WIDTH, height=HEIGHT):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        self.width = width
        self.height = height

    def to_screen(self, pt):
        sx = (pt[0] - self.x0) / (self.x1 - self.x0) * self.width
        sy = (self.y1 - pt[1]) / (self.y1 - self.y0) * self.height
        return sx, sy

    def points(self, pts):
        return " ".join(f"{_fmt(sx)},{_fmt(sy)}" for sx, sy in map(self.to_screen, pts))


def state_plane_svg(ordered_vertices, lam=None, trajectory=None, title="") -> str:
    """Scene with the set polygon, contracted copies for shrinking powers of
    lam (drawn while the factor stays above SHRINK_FLOOR), and a trajectory."""
    verts = np.asarray(ordered_vertices, dtype=float)
    xmin, ymin = verts.min(axis=0)
    xmax, ymax = verts.max(axis=0)
    pad_x = (xmax - xmin) * MARGIN_FRAC
    pad_y = (ymax - ymin) * MARGIN_FRAC
    frame = _Frame((xmin - pad_x, xmax + pad_x), (ymin - pad_y, ymax + pad_y))

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}">',
             f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>']
    ox, oy = frame.to_screen((0.0, 0.0))
    parts.append(f'<line x1="0" y1="{_fmt(oy)}" x2="{WIDTH}" y2="{_fmt(oy)}" '
                 'stroke="#cccccc" stroke-width="1"/>')
    parts.append(f'<line x1="{_fmt(ox)}" y1="0" x2="{_fmt(ox)}" y2="{HEIGHT}" '
                 'stroke="#cccccc" stroke-width="1"/>')
    parts.append(f'<polygon points="{frame.points(verts)}" fill="none" '
                 'stroke="#1f77b4" stroke-width="2"/>')
    if lam is not None and 0.0 < lam < 1.0:
        factor = lam
        while factor >= SHRINK_FLOOR:
            parts.append(f'<polygon points="{frame.points(verts * factor)}" fill="none" '
                         'stroke="#9ecae1" stroke-width="1" stroke-dasharray="4 3"/>')
            factor *= lam
    if trajectory is not None:
        traj = np.atleast_2d(np.asarray(trajectory, dtype=float))
        parts.append(f'<polyline points="{frame.points(traj)}" fill="none" '
                     'stroke="#d62728" stroke-width="1.5"/>')
        for pt in traj:
            sx, sy = frame.to_screen(pt)
            parts.append(f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="2.5" fill="#d62728"/>')
        sx, sy = frame.to_screen(traj[0])
        parts.append(f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="4" fill="none" '
                     'stroke="#d62728" stroke-width="1.5"/>')
    if title:
        parts.append(f'<text x="10" y="20" font-family="sans-serif" font-size="14" '
                     f'fill="#333333">{title}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def input_signal_svg(inputs, lower: float, upper: float, title="") -> str:
    """Scalar input signal against its admissible band."""
    u = np.asarray(inputs, dtype=float).reshape(-1)
    steps = len(u)
    span = max(abs(lower), abs(upper), float(np.max(np.abs(u))) if steps else 1.0)
    frame = _Frame((-0.5, max(steps - 0.5, 0.5)), (-1.15 * span, 1.15 * span))

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}">',
             f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>']
    _, zero_y = frame.to_screen((0.0, 0.0))
    parts.append(f'<line x1="0" y1="{_fmt(zero_y)}" x2="{WIDTH}" y2="{_fmt(zero_y)}" '
                 'stroke="#cccccc" stroke-width="1"/>')
    for bound in (lower, upper):
        _, by = frame.to_screen((0.0, bound))
        parts.append(f'<line x1="0" y1="{_fmt(by)}" x2="{WIDTH}" y2="{_fmt(by)}" '
                     'stroke="#d62728" stroke-width="1" stroke-dasharray="6 4"/>')
    if steps:
        pts = [(float(t), float(u[t])) for t in range(steps)]
        parts.append(f'<polyline points="{frame.points(pts)}" fill="none" '
                     'stroke="#1f77b4" stroke-width="1.5"/>')
        for t, val in pts:
            sx, sy = frame.to_screen((t, val))
            parts.append(f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="2" fill="#1f77b4"/>')
    if title:
        parts.append(f'<text x="10" y="20" font-family="sans-serif" font-size="14" '
                     f'fill="#333333">{title}</text>')
    parts.append("</svg>")
    return "\n".join(parts)
