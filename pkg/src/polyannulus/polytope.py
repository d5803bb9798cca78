"""Reference polytopes and the polyhedral distance they induce.

A polytope ``C`` is kept in both representations: its vertices and its
facet halfspaces ``normal . x <= offset``.  The origin must be strictly
inside, so every offset is positive and the gauge

    gauge(v) = max_i (normal_i . v) / offset_i

is the smallest ``r >= 0`` with ``v`` in ``r C``.  The convex distance
from ``p`` to ``q`` is ``gauge(q - p)``; it is a metric only when ``C`` is
centrally symmetric.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull

from . import lp
from .errors import DegenerateShape, DimensionTooHigh, InvalidParameter, OriginNotInterior

INCIDENCE_TOL = 1e-9


@dataclass(frozen=True)
class Rotation:
    """Composition of planar rotations in coordinate planes (0,1), (1,2), ...

    ``angles`` has ``dim - 1`` entries, reduced into ``[0, 2*pi)``.
    """

    dim: int
    angles: tuple = ()

    def __post_init__(self):
        angles = tuple(float(a) % (2.0 * math.pi) for a in self.angles)
        if len(angles) != self.dim - 1:
            raise InvalidParameter(f"expected {self.dim - 1} angles, got {len(angles)}")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def identity(cls, dim):
        return cls(dim, (0.0,) * (dim - 1))

    @property
    def is_identity(self):
        return all(a == 0.0 for a in self.angles)

    def matrix(self):
        return rotation_from_angles(self.angles)


def rotation_from_angles(angles):
    """Orthogonal matrix for the Givens composition described by ``angles``.

    With ``d = len(angles) + 1`` the rotation by ``angles[k]`` acts in the
    coordinate plane ``(k, k+1)``; planes are applied in increasing order.
    """
    d = len(angles) + 1
    R = np.eye(d)
    for k, a in enumerate(angles):
        G = np.eye(d)
        ca, sa = math.cos(a), math.sin(a)
        G[k, k] = ca
        G[k, k + 1] = -sa
        G[k + 1, k] = sa
        G[k + 1, k + 1] = ca
        R = G @ R
    return R


@dataclass(frozen=True)
class Cube:
    center: np.ndarray
    half_side: float

    @property
    def side(self):
        return 2.0 * self.half_side


@dataclass(frozen=True, eq=False)
class ConvexPolytope:
    """Convex polytope with the origin strictly inside.

    In the plane, vertices run counterclockwise and facet ``k`` joins vertex
    ``k`` to vertex ``k + 1`` (cyclically).  Instances are immutable.
    """

    dim: int
    vertices: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray
    incidence: tuple = field(default=())

    def __post_init__(self):
        for name in ("vertices", "normals", "offsets"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_facets(self):
        return self.normals.shape[0]

    @property
    def n_vertices(self):
        return self.vertices.shape[0]

    def gauge(self, v):
        return gauge(self, v)

    def distance(self, p, q):
        return distance(self, p, q)

    def to_dict(self):
        return {
            "dim": self.dim,
            "vertices": self.vertices.tolist(),
            "halfspaces": [
                {"normal": n.tolist(), "offset": float(b)}
                for n, b in zip(self.normals, self.offsets)
            ],
        }


def gauge(C, v):
    """Gauge of ``v`` (any leading batch shape) with respect to ``C``."""
    v = np.asarray(v, dtype=float)
    # coordinate-wise sum instead of a matmul: BLAS blocking would make a
    # row's value depend on the batch it arrives in
    dots = v[..., 0, None] * C.normals[:, 0]
    for k in range(1, C.dim):
        dots = dots + v[..., k, None] * C.normals[:, k]
    return np.maximum(np.max(dots / C.offsets, axis=-1), 0.0)


def distance(C, p, q):
    """Convex distance ``d_C(p, q)``: the gauge of ``q - p``."""
    return gauge(C, np.asarray(q, dtype=float) - np.asarray(p, dtype=float))


def _incidence(vertices, normals, offsets):
    slack = vertices @ normals.T - offsets
    tol = INCIDENCE_TOL * np.maximum(1.0, np.abs(offsets))
    return tuple(tuple(int(i) for i in np.flatnonzero(np.abs(row) <= tol)) for row in slack)


def _check(dim, vertices, normals, offsets):
    if vertices.ndim != 2 or vertices.shape[1] != dim:
        raise InvalidParameter(f"vertices must be {dim}-dimensional")
    if normals.ndim != 2 or normals.shape[1] != dim or offsets.shape != (normals.shape[0],):
        raise InvalidParameter("halfspaces do not match the dimension")
    if vertices.shape[0] < dim + 1 or normals.shape[0] < dim + 1:
        raise DegenerateShape("need at least d+1 vertices and d+1 facets")
    if np.linalg.matrix_rank(vertices - vertices[0], tol=1e-12 * max(1.0, np.abs(vertices).max())) < dim:
        raise DegenerateShape("vertices do not span the space")
    if np.any(offsets <= 0):
        raise OriginNotInterior("every facet offset must be positive")
    ratios = np.max((vertices @ normals.T) / offsets, axis=1)
    if np.any(np.abs(ratios - 1.0) > 1e-9):
        raise InvalidParameter("vertices and halfspaces describe different polytopes")


def _ccw_order(vertices):
    angles = np.mod(np.arctan2(vertices[:, 1], vertices[:, 0]), 2.0 * math.pi)
    return np.argsort(angles, kind="stable")


def _planar(vertices, normals=None, offsets=None):
    vertices = vertices[_ccw_order(vertices)]
    nxt = np.roll(vertices, -1, axis=0)
    if normals is None:
        edge = nxt - vertices
        normals = np.column_stack([edge[:, 1], -edge[:, 0]])
        offsets = np.einsum("ij,ij->i", normals, vertices)
        if np.any(offsets <= 0):
            raise OriginNotInterior("origin is not strictly inside the polygon")
        normals = normals / offsets[:, None]
        offsets = np.ones(len(vertices))
    else:
        # reorder supplied facets so that facet k joins vertex k and k+1
        order = []
        for a, b in zip(vertices, nxt):
            hit = [
                i for i in range(len(offsets))
                if abs(normals[i] @ a - offsets[i]) <= INCIDENCE_TOL * max(1.0, offsets[i])
                and abs(normals[i] @ b - offsets[i]) <= INCIDENCE_TOL * max(1.0, offsets[i])
            ]
            if not hit:
                raise InvalidParameter("consecutive vertices share no facet")
            order.append(hit[0])
        if len(set(order)) != len(offsets):
            raise InvalidParameter("halfspaces contain redundant facets")
        normals, offsets = normals[order], offsets[order]
    return vertices, normals, offsets


def from_halfspaces(dim, vertices, normals, offsets):
    """Build a polytope from both representations, validating that they agree."""
    vertices = np.asarray(vertices, dtype=float).reshape(-1, dim)
    normals = np.asarray(normals, dtype=float).reshape(-1, dim)
    offsets = np.asarray(offsets, dtype=float).ravel()
    if np.any(offsets <= 0):
        raise OriginNotInterior("every facet offset must be positive")
    if dim == 2:
        _check(dim, vertices, normals, offsets)
        vertices, normals, offsets = _planar(vertices, normals, offsets)
    _check(dim, vertices, normals, offsets)
    return ConvexPolytope(dim, vertices, normals, offsets, _incidence(vertices, normals, offsets))


def from_vertices(dim, points):
    """Convex hull of ``points`` with facets normalized to offset 1.

    Supported for ``dim <= 3``; higher dimensions need explicit halfspaces.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise InvalidParameter(f"points must be {dim}-dimensional")
    if dim < 2:
        raise InvalidParameter("dimension must be at least 2")
    if dim > 3:
        raise DimensionTooHigh("supply halfspaces for dimension > 3")
    if pts.shape[0] < dim + 1 or np.linalg.matrix_rank(
        pts - pts[0], tol=1e-12 * max(1.0, np.abs(pts).max())
    ) < dim:
        raise DegenerateShape("points do not span the space")
    hull = ConvexHull(pts)
    vertices = pts[np.sort(hull.vertices)]
    if dim == 2:
        vertices, normals, offsets = _planar(vertices)
    else:
        normals, offsets = [], []
        for eq in hull.equations:
            n, b = eq[:-1], -eq[-1]
            if b <= 1e-12 * max(1.0, np.abs(pts).max()):
                raise OriginNotInterior("origin is not strictly inside the hull")
            a = n / b
            if not any(np.allclose(a, other, rtol=1e-9, atol=1e-12) for other in normals):
                normals.append(a)
        normals = np.array(normals)
        offsets = np.ones(len(normals))
    _check(dim, vertices, normals, offsets)
    return ConvexPolytope(dim, vertices, normals, offsets, _incidence(vertices, normals, offsets))


def regular_polygon(k, circumradius=1.0, phase=0.0):
    t = phase + 2.0 * math.pi * np.arange(k) / k
    return from_vertices(2, circumradius * np.column_stack([np.cos(t), np.sin(t)]))


def reflect(C):
    """The reflected body ``-C``; its gauge at ``v`` equals the gauge of ``C`` at ``-v``."""
    # negation is a half-turn in the plane, so the facet/vertex pairing survives
    return ConvexPolytope(C.dim, -C.vertices, -C.normals, C.offsets.copy(), C.incidence)


def rotate(C, rotation):
    """Rotate vertices and normals; offsets are unchanged."""
    if isinstance(rotation, Rotation):
        if rotation.dim != C.dim:
            raise InvalidParameter("rotation dimension does not match the polytope")
        R = rotation.matrix()
    else:
        R = np.asarray(rotation, dtype=float)
    if C.dim == 2 and np.linalg.det(R) < 0:
        raise InvalidParameter("reflections are not rotations")
    return ConvexPolytope(C.dim, C.vertices @ R.T, C.normals @ R.T, C.offsets.copy(), C.incidence)


def is_centrally_symmetric(C, tol=1e-9):
    V = C.vertices
    scale = max(1.0, float(np.abs(V).max()))
    for v in V:
        if np.min(np.max(np.abs(V + v), axis=1)) > tol * scale:
            return False
    return True


def rotational_symmetry_order(C, tol=1e-9):
    """Largest ``s`` such that rotating the polygon by ``2 pi / s`` maps it onto itself."""
    if C.dim != 2:
        return 1
    V = C.vertices
    scale = max(1.0, float(np.abs(V).max()))
    for s in range(C.n_vertices, 1, -1):
        if C.n_vertices % s:
            continue
        R = rotation_from_angles((2.0 * math.pi / s,))
        W = V @ R.T
        if all(np.min(np.max(np.abs(V - w), axis=1)) <= tol * scale for w in W):
            return s
    return 1


def asymmetry_constant(C):
    """``max_u gauge(-u) / gauge(u)``, attained at a vertex direction."""
    return float(np.max(gauge(C, -C.vertices)))


def bottleneck_angle(C):
    """Smallest angle between a vertex ray and an incident facet hyperplane."""
    best = math.inf
    for v, facets in zip(C.vertices, C.incidence):
        vhat = v / np.linalg.norm(v)
        for i in facets:
            n = C.normals[i]
            s = abs(float(n @ vhat)) / float(np.linalg.norm(n))
            best = min(best, math.asin(min(1.0, s)))
    return best


def largest_enclosed_cube(C, seed=0):
    """Largest axis-aligned cube inside ``C``.

    Solves ``max h`` subject to ``normal_i . x + h ||normal_i||_1 <= offset_i``;
    among optimal centers the lexicographically smallest is returned.
    """
    d = C.dim
    l1 = np.abs(C.normals).sum(axis=1)
    A = np.column_stack([C.normals, l1])
    b = C.offsets
    lo = np.concatenate([C.vertices.min(axis=0) - 1.0, [0.0]])
    hi = np.concatenate([C.vertices.max(axis=0) + 1.0, [float(np.ptp(C.vertices, axis=0).max())]])
    objectives = [np.eye(d + 1)[d] * -1.0] + [np.eye(d + 1)[k] for k in range(d)]
    z = lp.lexmin(A, b, objectives, lo, hi, seed=seed)
    center = z[:d]
    half = float(np.min((b - C.normals @ center) / l1))
    return Cube(center, max(half, 0.0))


def centered_cube_half_side(C):
    """Half side of the largest cube centered at the origin inside ``C``.

    That cube also sits inside ``-C``, so a cube offset of this size bounds
    the convex distance in both directions.
    """
    return float(np.min(C.offsets / np.abs(C.normals).sum(axis=1)))


def smallest_enclosing_cube(C, center, scale):
    """Smallest cube containing ``center + scale * C``."""
    center = np.asarray(center, dtype=float)
    pts = center + scale * C.vertices
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    return Cube((lo + hi) / 2.0, float(np.max(hi - lo)) / 2.0)
