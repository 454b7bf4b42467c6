"""Static SVG rendering of 2-D instances: the set, the admissible line fan,
the subspace, and the returned hyperplane."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .convexsets import ConvexSet, HPolyhedron, OpenBall
from .errors import InputError


def _poly_vertices(a: np.ndarray, b: np.ndarray, box: float) -> np.ndarray:
    """Vertices of the closure clipped to a centered box, in angular order."""
    rows = np.vstack([a, [[1, 0], [-1, 0], [0, 1], [0, -1]]])
    offs = np.concatenate([b, [box, box, box, box]])
    pts = []
    for i, j in combinations(range(rows.shape[0]), 2):
        m = rows[[i, j]]
        if abs(np.linalg.det(m)) < 1e-12:
            continue
        v = np.linalg.solve(m, offs[[i, j]])
        if np.all(rows @ v <= offs + 1e-9):
            pts.append(v)
    if not pts:
        return np.zeros((0, 2))
    pts = np.array(pts)
    centroid = pts.mean(axis=0)
    order = np.argsort(np.arctan2(pts[:, 1] - centroid[1], pts[:, 0] - centroid[0]))
    return pts[order]


def render_svg(
    a_set: ConvexSet,
    s_basis: np.ndarray | None = None,
    normal: np.ndarray | None = None,
    admissible: np.ndarray | None = None,
    *,
    size: int = 480,
) -> str:
    if a_set.dim != 2:
        raise InputError("SVG rendering is 2-D only")
    if isinstance(a_set, OpenBall):
        extent = float(np.max(np.abs(a_set.center)) + a_set.radius) * 1.3
    else:
        extent = 5.0
    extent = max(extent, 2.0)
    half = size / 2.0
    scale = half / extent

    def sx(v):
        return f"{half + scale * v[0]:.2f}"

    def sy(v):
        return f"{half - scale * v[1]:.2f}"

    def line(p, q, style):
        return f'<line x1="{sx(p)}" y1="{sy(p)}" x2="{sx(q)}" y2="{sy(q)}" {style}/>'

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        line((-extent, 0), (extent, 0), 'stroke="#ccc"'),
        line((0, -extent), (0, extent), 'stroke="#ccc"'),
    ]
    if admissible is not None:
        for theta in admissible:
            d = np.array([np.cos(theta), np.sin(theta)]) * extent * 2
            parts.append(line(-d, d, 'stroke="#dde8ff" stroke-width="1"'))
    if isinstance(a_set, OpenBall):
        cx, cy = a_set.center
        parts.append(
            f'<circle cx="{half + scale * cx:.2f}" cy="{half - scale * cy:.2f}" '
            f'r="{scale * a_set.radius:.2f}" fill="#ffd9b3" stroke="#e07b00" stroke-dasharray="4 3"/>'
        )
    elif isinstance(a_set, HPolyhedron):
        verts = _poly_vertices(np.asarray(a_set.a), np.asarray(a_set.b), extent * 2)
        if verts.shape[0] >= 3:
            path = " ".join(f"{sx(v)},{sy(v)}" for v in verts)
            parts.append(f'<polygon points="{path}" fill="#ffd9b3" stroke="#e07b00" stroke-dasharray="4 3"/>')
    if s_basis is not None and len(s_basis):
        d = np.asarray(s_basis[0]) * extent * 2
        parts.append(line(-d, d, 'stroke="#2a9d3a" stroke-width="2" stroke-dasharray="6 4"'))
    if normal is not None:
        d = np.array([-normal[1], normal[0]]) * extent * 2
        parts.append(line(-d, d, 'stroke="#1f4fd8" stroke-width="2.5"'))
    parts.append(f'<circle cx="{half}" cy="{half}" r="3" fill="#222"/>')
    parts.append("</svg>")
    return "\n".join(parts)
