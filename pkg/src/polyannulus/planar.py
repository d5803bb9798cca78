"""Accelerated grid sweep in the plane.

For a gridpoint ``g`` the gauge of ``p - g`` is decided by the facet whose
cone (spanned by its two vertex rays from ``g``) contains ``p``.  The outer
radius needs no classification at all: it is the largest per-facet extreme
``(max_p normal . p - normal . g) / offset``.  The inner radius needs, for
every facet and gridpoint, the smallest ``normal . p`` over the points in
that facet's cone.

Cone membership is a two-sided test against the gridlines parallel to the
facet's vertex rays, so each vertex direction gets a sorted list of gridline
projections (built in linear time from the lattice structure) and every
point is located in it by binary search.  Per facet, the contributor minima
for all gridpoints then come from one offline dominance sweep with an
insert-only prefix-min Fenwick tree.
"""

import time
from dataclasses import dataclass

import numpy as np
from numba import njit

from .annulus import AnnulusSolution, as_points, scaled_projection
from .errors import DegenerateDirection, NotPlanar
from .grid import select_best


@dataclass(frozen=True, eq=False)
class LineProjectionIndex:
    """Gridlines parallel to ``direction``, ordered along its perpendicular.

    ``offsets[g]`` is the projection of gridpoint ``g`` (flat index) onto
    ``perp``; ``order`` lists gridpoints by increasing projection and
    ``rank`` is its inverse.  ``left_rank[g]`` and ``right_rank[g]`` count
    the gridlines strictly below and at or below gridpoint ``g``'s own line.
    """

    direction: np.ndarray
    perp: np.ndarray
    offsets: np.ndarray
    order: np.ndarray
    sorted_offsets: np.ndarray
    rank: np.ndarray
    left_rank: np.ndarray = None
    right_rank: np.ndarray = None


def _region_order(step_q, step_r, k):
    """Flat-order permutation sorting ``q * step_q + r * step_r`` for a k-by-k block.

    Requires ``step_q >= step_r >= 0``.  Consecutive entries of one row are
    exactly ``step_q`` apart, so cutting the axis into regions ``step_q``
    wide puts at most one entry of each row in every region, always in the
    same relative order.  Sorting that order once (k entries) fixes all
    regions.
    """
    r = np.arange(k)
    shift = r * step_r
    region = np.floor(shift / step_q).astype(np.int64)
    phase = shift - region * step_q
    by_phase = np.argsort(phase, kind="stable")
    rows = r[by_phase]
    row_region = region[by_phase]
    # region rho holds row r at q = rho - region[r] when 0 <= q < k; reading
    # the (region, phase rank) mask in row-major order lists every region in turn
    rho = np.arange(int(region.max()) + k)[:, None]
    q = rho - row_region[None, :]
    hit_rho, hit_rank = np.nonzero((q >= 0) & (q < k))
    return hit_rho - row_region[hit_rank], rows[hit_rank]


def build_line_projection_index(direction, grid):
    if grid.dim != 2:
        raise NotPlanar("line projection index needs a planar grid")
    v = np.asarray(direction, dtype=float)
    norm = float(np.hypot(v[0], v[1]))
    if norm == 0.0:
        raise DegenerateDirection("zero direction")
    perp = np.array([-v[1], v[0]]) / norm
    k = grid.points_per_axis
    step_i = grid.spacing * perp[0]
    step_j = grid.spacing * perp[1]
    axis = np.arange(k, dtype=float)
    offsets = (perp @ grid.origin + np.add.outer(axis * step_i, axis * step_j)).ravel()

    # flip axes whose step is negative, then let q be the axis with the larger step
    flip_i, flip_j = step_i < 0, step_j < 0
    if abs(step_i) >= abs(step_j):
        q, r = _region_order(abs(step_i), abs(step_j), k)
        i, j = q, r
    else:
        q, r = _region_order(abs(step_j), abs(step_i), k)
        i, j = r, q
    if flip_i:
        i = k - 1 - i
    if flip_j:
        j = k - 1 - j
    order = i * k + j
    # rounding can swap near-equal neighbours; timsort repairs a nearly
    # sorted sequence in linear time
    order = order[np.argsort(offsets[order], kind="stable")]
    values = offsets[order]
    if np.any(values[1:] == values[:-1]):
        order = order[np.lexsort((order, values))]
        values = offsets[order]
    n = order.shape[0]
    rank = np.empty_like(order)
    rank[order] = np.arange(n)
    # runs of equal values share their left and right ranks
    pos = np.arange(n)
    starts = np.r_[True, values[1:] != values[:-1]]
    ends = np.r_[values[1:] != values[:-1], True]
    first = np.maximum.accumulate(np.where(starts, pos, 0))
    last = np.minimum.accumulate(np.where(ends, pos, n)[::-1])[::-1]
    left = np.empty(n, dtype=np.int64)
    right = np.empty(n, dtype=np.int64)
    left[order] = first
    right[order] = last + 1
    return LineProjectionIndex(v, perp, offsets, order, values, rank, left, right)


def locate_slab(idx, p, side="right"):
    """Slab index of ``p``: the number of gridlines at or left of it.

    With ``side="right"`` the result ``r`` satisfies
    ``sorted_offsets[r-1] <= proj(p) < sorted_offsets[r]``; ``side="left"``
    uses the strict inequality on the left instead.  Accepts one point or an
    ``(n, 2)`` array.
    """
    proj = np.asarray(p, dtype=float) @ idx.perp
    return np.searchsorted(idx.sorted_offsets, proj, side=side)


@njit(cache=True)
def _dominance_min(pa, pb, pval, ga, gb, g_order, size):
    """For each query ``g``: min of ``pval`` over points with ``pa <= ga[g]`` and ``pb >= gb[g]``.

    ``g_order`` must list the queries by nondecreasing ``ga``.
    """
    n = pa.shape[0]
    p_order = np.argsort(pa, kind="mergesort")
    tree = np.full(size + 2, np.inf)
    out = np.empty(ga.shape[0])
    ip = 0
    for t in range(g_order.shape[0]):
        g = g_order[t]
        a = ga[g]
        while ip < n and pa[p_order[ip]] <= a:
            p = p_order[ip]
            key = size - pb[p] + 1
            val = pval[p]
            while key <= size + 1:
                if val < tree[key]:
                    tree[key] = val
                key += key & (-key)
            ip += 1
        key = size - gb[g] + 1
        res = np.inf
        while key > 0:
            if tree[key] < res:
                res = tree[key]
            key -= key & (-key)
        out[g] = res
    return out


@dataclass(frozen=True, eq=False)
class FacetSweepTable:
    """Per-facet data for the sweep.

    ``contributor_min[g]`` is the smallest ``normal . p / offset`` over
    points ``p`` with ``p - g`` in the cone of the facet (``inf`` when there
    are none); ``global_max`` is the largest over all points.
    """

    facet: int
    v1: np.ndarray
    v2: np.ndarray
    global_max: float
    contributor_min: np.ndarray


def build_facet_tables(C, S, grid, indices=None):
    """Contributor minima for every facet of the polygon ``C`` and gridpoint."""
    if C.dim != 2 or grid.dim != 2:
        raise NotPlanar("the sweep is only defined in the plane")
    pts = as_points(S, 2)
    m = C.n_vertices
    if indices is None:
        indices = [build_line_projection_index(v, grid) for v in C.vertices]
    proj = [pts @ idx.perp for idx in indices]
    size = grid.n_points

    # left-closed and right-closed slab ranks per vertex direction
    left_p = [np.searchsorted(idx.sorted_offsets, s, side="left") for idx, s in zip(indices, proj)]
    right_p = [np.searchsorted(idx.sorted_offsets, s, side="right") for idx, s in zip(indices, proj)]

    values = scaled_projection(C, pts)
    tables = []
    for e in range(m):
        k1, k2 = e, (e + 1) % m
        # p - g lies in cone(v1, v2) iff it is not clockwise of v1
        # and not counterclockwise of v2
        cmin = _dominance_min(
            left_p[k2].astype(np.int64), right_p[k1].astype(np.int64),
            np.ascontiguousarray(values[:, e]),
            indices[k2].left_rank, indices[k1].right_rank,
            indices[k2].order.astype(np.int64), size,
        )
        tables.append(FacetSweepTable(e, C.vertices[k1], C.vertices[k2],
                                      float(values[:, e].max()), cmin))
    return tables


def sweep_radii(C, S, grid, tables=None):
    """Inner and outer radius at every gridpoint, in flat order."""
    if tables is None:
        tables = build_facet_tables(C, S, grid)
    NG = scaled_projection(C, grid.points())
    extreme = np.array([t.global_max for t in tables])
    outer = np.max(extreme - NG, axis=1)
    cmin = np.column_stack([t.contributor_min for t in tables])
    inner = np.min(cmin - NG, axis=1)
    outer = np.maximum(outer, 0.0)
    inner = np.minimum(np.maximum(inner, 0.0), outer)
    return inner, outer


def fast_mwa_sweep(C, S, grid, tables=None):
    """Best gridpoint of ``grid`` using the sweep; agrees with direct evaluation."""
    start = time.perf_counter()
    inner, outer = sweep_radii(C, S, grid, tables)
    best = select_best(inner, outer)
    return AnnulusSolution(
        grid.point(best), float(inner[best]), float(outer[best]),
        evaluations=grid.n_points, elapsed=time.perf_counter() - start,
        meta={"grid_index": best, "path": "planar"},
    )
