"""Synthetic instances: posed polytope boundaries sampled at a known density."""

import math
from dataclasses import dataclass, field

import numpy as np

from .annulus import PointCloud
from .errors import FacetUnsampled, InvalidParameter
from .polytope import Rotation, gauge, rotate


@dataclass(frozen=True, eq=False)
class GeneratorSpec:
    """Boundary of ``translation + scale * rotation(shape)``.

    Every boundary point gets a sample within Euclidean ``delta``; each
    sample is then pushed along its ray from the posed center by a factor
    drawn uniformly from ``[1 - band, 1 + band]``.
    """

    shape: object
    translation: np.ndarray = None
    rotation: Rotation = None
    scale: float = 1.0
    delta: float = 0.1
    band: float = 0.0
    seed: int = 0

    def __post_init__(self):
        d = self.shape.dim
        t = np.zeros(d) if self.translation is None else np.asarray(self.translation, dtype=float)
        object.__setattr__(self, "translation", t)
        if self.rotation is None:
            object.__setattr__(self, "rotation", Rotation.identity(d))
        if not self.delta > 0:
            raise InvalidParameter("delta must be positive")
        if not 0 <= self.band < 1:
            raise InvalidParameter("band must be in [0, 1)")
        if not self.scale > 0:
            raise InvalidParameter("scale must be positive")


@dataclass(eq=False)
class GeneratedInstance:
    """A sampled cloud with the annulus it was generated in.

    ``width`` is measured on the emitted samples at the generating pose, so
    it bounds the optimum from above exactly.
    """

    cloud: PointCloud
    center: np.ndarray
    rotation: Rotation
    inner_radius: float
    outer_radius: float
    facet_counts: list = field(default_factory=list)
    base_points: np.ndarray = None

    @property
    def width(self):
        return self.outer_radius - self.inner_radius

    @property
    def points(self):
        return self.cloud.points

    @property
    def certified(self):
        return all(c >= 1 for c in self.facet_counts)


def _segment(a, b, delta):
    length = float(np.linalg.norm(b - a))
    if length < delta:
        raise FacetUnsampled(f"facet of length {length:.6g} is shorter than delta={delta}")
    count = max(math.ceil(length / delta) + 1, 3)
    t = np.linspace(0.0, 1.0, count)[:, None]
    return a + t * (b - a), count - 2


def _triangle(a, b, c, delta):
    longest = max(np.linalg.norm(b - a), np.linalg.norm(c - b), np.linalg.norm(a - c))
    k = max(1, math.ceil(longest / delta))
    rows = []
    for i in range(k + 1):
        for j in range(k + 1 - i):
            rows.append((i / k) * b + (j / k) * c + ((k - i - j) / k) * a)
    return np.array(rows)


def _facet_polygon(W, normal, members):
    P = W[list(members)]
    centroid = P.mean(axis=0)
    n = normal / np.linalg.norm(normal)
    e1 = P[0] - centroid
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    ang = np.arctan2((P - centroid) @ e2, (P - centroid) @ e1)
    return P[np.argsort(ang)], centroid


def sample_boundary(spec):
    """Sample the posed boundary; see GeneratorSpec."""
    C = spec.shape
    d = C.dim
    posed = rotate(C, spec.rotation)
    W = spec.translation + spec.scale * posed.vertices
    counts = []
    chunks = []
    if d == 2:
        for k in range(C.n_vertices):
            seg, interior = _segment(W[k], W[(k + 1) % C.n_vertices], spec.delta)
            chunks.append(seg)
            counts.append(interior)
    elif d == 3:
        for i in range(C.n_facets):
            members = [v for v, inc in enumerate(C.incidence) if i in inc]
            poly, centroid = _facet_polygon(W, posed.normals[i], members)
            extent = max(np.linalg.norm(p - q) for p in poly for q in poly)
            if extent < spec.delta:
                raise FacetUnsampled(f"facet {i} has extent {extent:.6g} below delta={spec.delta}")
            facet_pts = [
                _triangle(centroid, poly[j], poly[(j + 1) % len(poly)], spec.delta)
                for j in range(len(poly))
            ]
            chunks.append(np.vstack(facet_pts))
            counts.append(1)  # the centroid is interior to the facet
    else:
        raise InvalidParameter("boundary sampling is implemented for d = 2 and d = 3")

    base = np.vstack(chunks)
    rng = np.random.default_rng(spec.seed)
    factor = rng.uniform(1.0 - spec.band, 1.0 + spec.band, size=base.shape[0]) if spec.band > 0 else 1.0
    if spec.band > 0:
        pts = spec.translation + factor[:, None] * (base - spec.translation)
    else:
        pts = base.copy()
    dist = gauge(posed, pts - spec.translation)
    return GeneratedInstance(
        PointCloud(d, pts), spec.translation.copy(), spec.rotation,
        float(dist.min()), float(dist.max()), counts, base,
    )


def perimeter(C, scale=1.0):
    """Total facet measure (edge length in 2D, area in 3D) of ``scale * C``."""
    if C.dim == 2:
        W = C.vertices
        return scale * float(np.linalg.norm(np.roll(W, -1, axis=0) - W, axis=1).sum())
    total = 0.0
    for i in range(C.n_facets):
        members = [v for v, inc in enumerate(C.incidence) if i in inc]
        poly, centroid = _facet_polygon(C.vertices, C.normals[i], members)
        for j in range(len(poly)):
            total += 0.5 * np.linalg.norm(np.cross(poly[j] - centroid, poly[(j + 1) % len(poly)] - centroid))
    return scale * scale * total


def delta_for_count(C, n, scale=1.0):
    """Sampling density giving roughly ``n`` samples on the boundary of ``scale * C``."""
    if C.dim == 2:
        return perimeter(C, scale) / n
    # triangular lattice: about 2 * area / delta^2 points
    return math.sqrt(2.0 * perimeter(C, scale) / n)
