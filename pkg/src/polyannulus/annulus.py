"""Annuli at a fixed center, and the solution record shared by all solvers."""

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import DegenerateAnnulus, EmptyCloud, InvalidParameter
from .polytope import Rotation, gauge, rotate


@dataclass(frozen=True, eq=False)
class PointCloud:
    dim: int
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, self.dim)
        if not np.all(np.isfinite(pts)):
            raise InvalidParameter("point coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]


def as_points(S, dim=None):
    """Coordinates of ``S`` (a PointCloud or array-like) as an ``(n, d)`` array."""
    pts = S.points if isinstance(S, PointCloud) else np.asarray(S, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1) if pts.size else pts.reshape(0, dim or 0)
    if pts.shape[0] == 0:
        raise EmptyCloud("point cloud is empty")
    if dim is not None and pts.shape[1] != dim:
        raise InvalidParameter(f"points are {pts.shape[1]}-dimensional, shape is {dim}-dimensional")
    return pts


@dataclass
class AnnulusSolution:
    center: np.ndarray
    inner_radius: float
    outer_radius: float
    rotation: Rotation = None
    epsilon: float = None
    evaluations: int = 1
    elapsed: float = 0.0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=float)
        if self.rotation is None:
            self.rotation = Rotation.identity(self.center.shape[0])

    @property
    def width(self):
        return self.outer_radius - self.inner_radius

    def to_dict(self):
        out = {
            "center": [float(x) for x in self.center],
            "rotation_angles": list(self.rotation.angles),
            "inner_radius": float(self.inner_radius),
            "outer_radius": float(self.outer_radius),
            "width": float(self.width),
            "epsilon": self.epsilon,
            "evaluations": int(self.evaluations),
            "elapsed_ms": 1000.0 * self.elapsed,
        }
        out.update(self.meta)
        return out


def scaled_projection(C, X):
    """``(X @ normals.T) / offsets`` for a batch of points ``X``.

    Computed coordinate-wise so a row's bits do not depend on the batch.
    Gauges relative to a center are differences of these rows, which lets
    every solver path share the same arithmetic.
    """
    X = np.asarray(X, dtype=float)
    dots = X[:, 0, None] * C.normals[:, 0]
    for k in range(1, C.dim):
        dots = dots + X[:, k, None] * C.normals[:, k]
    return dots / C.offsets


@njit(cache=True)
def _radii_kernel(PT, G, inner, outer):
    m, n = PT.shape
    buf = np.empty(n)
    for g in range(G.shape[0]):
        buf[:] = 0.0
        for i in range(m):
            c = G[g, i]
            for p in range(n):
                v = PT[i, p] - c
                buf[p] = v if v > buf[p] else buf[p]
        lo = buf[0]
        hi = buf[0]
        for p in range(1, n):
            lo = min(lo, buf[p])
            hi = max(hi, buf[p])
        inner[g] = lo
        outer[g] = hi


def radii_block(P, G):
    """Inner and outer radius at every center.

    ``P`` and ``G`` are the scaled projections of the points and of the
    centers (see ``scaled_projection``).
    """
    G = np.ascontiguousarray(G, dtype=float)
    inner = np.empty(G.shape[0])
    outer = np.empty(G.shape[0])
    _radii_kernel(np.ascontiguousarray(np.asarray(P, dtype=float).T), G, inner, outer)
    return inner, outer


def annulus_at(C, S, center):
    """Thinnest annulus of ``C`` centered at ``center`` holding every point of ``S``."""
    pts = as_points(S, C.dim)
    center = np.asarray(center, dtype=float)
    dist = gauge(C, pts - center)
    return AnnulusSolution(center.copy(), float(dist.min()), float(dist.max()))


def fatness_stats(C, S, sol):
    """Concentric fatness ``R / r`` and slimness ``R / width`` at ``sol.center``.

    Radii are re-measured on ``S`` under the solution's rotation.  The two
    ratios satisfy ``1 / slimness = 1 - 1 / fatness``.
    """
    shape = C if sol.rotation.is_identity else rotate(C, sol.rotation)
    at = annulus_at(shape, S, sol.center)
    if at.width <= 0.0 or at.inner_radius <= 0.0:
        raise DegenerateAnnulus("fatness needs positive width and inner radius")
    return at.outer_radius / at.inner_radius, at.outer_radius / at.width
