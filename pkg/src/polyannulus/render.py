"""SVG drawing of a planar annulus solution."""

import numpy as np

from .annulus import as_points
from .errors import NotPlanar
from .minball import minball
from .polytope import rotate

SIZE = 600
MARGIN = 20


def shell_vertices(C, sol, radius):
    """Vertices of ``center + radius * R(C)``, in the order of ``C``'s vertices."""
    posed = rotate(C, sol.rotation)
    return np.asarray(sol.center) + radius * posed.vertices


def _path(pts, fmt):
    head = "M " + fmt(pts[0])
    return head + "".join(" L " + fmt(p) for p in pts[1:]) + " Z"


def render_svg(C, S, sol, seed=0):
    """Points, the inner and outer shells of ``sol`` and the MinBall, as an SVG string."""
    if C.dim != 2:
        raise NotPlanar("rendering needs a planar polytope")
    pts = as_points(S, 2)
    ball = minball(C, pts, seed=seed)
    outer = shell_vertices(C, sol, sol.outer_radius)
    inner = shell_vertices(C, sol, sol.inner_radius)
    mb = np.asarray(ball.center) + ball.radius * C.vertices
    everything = np.vstack([pts, outer, mb])
    lo, hi = everything.min(axis=0), everything.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    k = (SIZE - 2 * MARGIN) / span

    def fmt(p):
        x = MARGIN + k * (p[0] - lo[0])
        y = SIZE - MARGIN - k * (p[1] - lo[1])  # svg y grows downward
        return f"{x:.3f},{y:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<path id="minball" d="{_path(mb, fmt)}" fill="none" stroke="#999999" '
        'stroke-dasharray="4 3"/>',
        f'<path id="outer" d="{_path(outer, fmt)}" fill="none" stroke="#1f4e9c"/>',
        f'<path id="inner" d="{_path(inner, fmt)}" fill="none" stroke="#c0392b"/>',
        '<g id="points" fill="black">',
    ]
    for p in pts:
        x, y = fmt(p).split(",")
        out.append(f'<circle cx="{x}" cy="{y}" r="1.5"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
