"""Smallest enclosing placement (MinBall) and fixed-center MaxBall."""

from dataclasses import dataclass

import numpy as np

from . import lp
from .annulus import as_points
from .polytope import gauge


@dataclass(frozen=True)
class Placement:
    center: np.ndarray
    radius: float


def minball(C, S, seed=0):
    """Smallest ``R`` and center ``c`` with every point of ``S`` inside ``c + R C``.

    The linear program over ``(c, R)`` has one constraint per (point, facet)
    pair, but for each facet only the extreme point ``max_p normal . p`` can
    bind, so the program handed to the incremental solver has one constraint
    per facet.  Among optimal centers the lexicographically smallest is
    returned.
    """
    pts = as_points(S, C.dim)
    d = C.dim
    ref = 0.5 * (pts.min(axis=0) + pts.max(axis=0))
    local = pts - ref
    extreme = (local @ C.normals.T).max(axis=0)

    # normal . c + offset * R >= extreme, and R >= 0
    A = np.vstack([
        np.column_stack([-C.normals, -C.offsets]),
        np.concatenate([np.zeros(d), [-1.0]])[None, :],
    ])
    b = np.concatenate([-extreme, [0.0]])

    r_bound = float(gauge(C, local).max())
    reach = float(np.abs(C.vertices).max())
    M = 4.0 * (r_bound * (reach + 1.0) + 1.0)
    lo = np.full(d + 1, -M)
    hi = np.full(d + 1, M)
    lo[d] = 0.0

    eye = np.eye(d + 1)
    objectives = [eye[d]] + [eye[k] for k in range(d)]
    z = lp.lexmin(A, b, objectives, lo, hi, seed=seed)
    if np.any(np.abs(z[:d]) >= 0.999 * M) or z[d] >= 0.999 * M:
        raise RuntimeError("minball: solution touches the bounding box")

    center = z[:d] + ref
    radius = float(gauge(C, pts - center).max())
    return Placement(center, radius)


def maxball_at(C, S, center):
    """Largest placement centered at ``center`` with no point of ``S`` inside."""
    pts = as_points(S, C.dim)
    center = np.asarray(center, dtype=float)
    return Placement(center.copy(), float(gauge(C, pts - center).min()))
