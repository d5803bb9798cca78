"""(1+eps)-approximate minimum-width annulus under translations."""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .annulus import AnnulusSolution, annulus_at, as_points, radii_block, scaled_projection
from .errors import InvalidParameter
from .grid import build_translation_grid, select_best
from .minball import minball
from .polytope import asymmetry_constant, is_centrally_symmetric

# point-facet pairs per gridpoint chunk; chunks are the unit of threading
_BLOCK = 20_000_000


@dataclass(frozen=True)
class SolverConfig:
    epsilon: float = 0.25
    seed: int = 0
    threads: int = 1
    tolerance: float = 1e-9
    force_b: float = None
    crossover: int = 200_000
    planar: bool = None  # None: decide by ``crossover``
    max_evaluations: int = 10_000_000
    max_retries: int = 6
    max_orientations: int = None
    hull_check: bool = False  # diagnostic only, never filters centers

    def __post_init__(self):
        if not (0.0 < self.epsilon <= 1.0):
            raise InvalidParameter(f"epsilon must be in (0, 1], got {self.epsilon}")
        if self.threads < 1:
            raise InvalidParameter("threads must be positive")
        if self.force_b is not None and self.force_b < 1:
            raise InvalidParameter("b must be at least 1")

    def with_epsilon(self, epsilon):
        return replace(self, epsilon=epsilon)


def constant_factor_mwa(C, S, seed=0):
    """Annulus centered at the MinBall center.

    Its width is at most ``(A + 1)`` times optimal, ``A`` being the asymmetry
    constant of ``C`` (so at most twice optimal for symmetric ``C``).
    """
    pts = as_points(S, C.dim)
    return annulus_at(C, pts, minball(C, pts, seed=seed).center)


def grid_radii(C, S, grid, threads=1):
    """Inner and outer radius at every gridpoint by direct evaluation."""
    pts = as_points(S, C.dim)
    P = scaled_projection(C, pts)
    chunk = max(1, _BLOCK // max(1, P.size))
    starts = list(range(0, grid.n_points, chunk))

    def work(start):
        G = grid.points(start, min(start + chunk, grid.n_points))
        return radii_block(P, scaled_projection(C, G))

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, starts))
    else:
        parts = [work(s) for s in starts]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def evaluate_grid(C, S, grid, threads=1):
    """Thinnest annulus over all gridpoints, evaluating each one directly."""
    start = time.perf_counter()
    inner, outer = grid_radii(C, S, grid, threads)
    best = select_best(inner, outer)
    return AnnulusSolution(
        grid.point(best), float(inner[best]), float(outer[best]),
        evaluations=grid.n_points, elapsed=time.perf_counter() - start,
        meta={"grid_index": best, "path": "direct"},
    )


def _search(C, pts, grid, cfg):
    use_planar = cfg.planar
    if use_planar is None:
        use_planar = C.dim == 2 and pts.shape[0] * grid.n_points > cfg.crossover
    if use_planar and C.dim == 2:
        from .planar import fast_mwa_sweep
        return fast_mwa_sweep(C, pts, grid)
    return evaluate_grid(C, pts, grid, cfg.threads)


def center_in_hull(points, center):
    """Whether ``center`` lies in the convex hull of ``points`` (False for flat sets)."""
    from scipy.optimize import linprog

    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    # feasibility of a convex combination
    A = np.vstack([pts.T, np.ones((1, n))])
    rhs = np.append(np.asarray(center, dtype=float), 1.0)
    res = linprog(np.zeros(n), A_eq=A, b_eq=rhs, bounds=(0, None), method="highs")
    return bool(res.status == 0)


def mwa_translation(C, S, cfg=None):
    """(1+eps)-approximate minimum-width annulus of ``S`` under translations.

    The grid is anchored at the MinBall center.  For asymmetric ``C`` a
    first pass with ``eps = 1`` and ``b = A + 1`` yields a width within twice
    the optimum, which then sizes the main grid with ``b = 2``.
    """
    cfg = cfg or SolverConfig()
    start = time.perf_counter()
    pts = as_points(S, C.dim)
    center = minball(C, pts, seed=cfg.seed).center
    base = annulus_at(C, pts, center)
    meta = {"mode": "translation", "b_used": None}

    def done(sol, evaluations):
        sol.epsilon = cfg.epsilon
        sol.evaluations = evaluations
        sol.elapsed = time.perf_counter() - start
        sol.meta = {**sol.meta, **meta}
        return sol

    if base.width <= cfg.tolerance * max(1.0, base.outer_radius):
        return done(base, 1)

    evaluations = 0
    w = base.width
    if cfg.force_b is not None:
        b = cfg.force_b
    elif is_centrally_symmetric(C):
        b = 2.0
    else:
        boot_grid = build_translation_grid(C, center, w, 1.0, asymmetry_constant(C) + 1.0)
        boot = _search(C, pts, boot_grid, cfg)
        evaluations += boot_grid.n_points
        meta["bootstrap_width"] = boot.width
        if boot.width <= cfg.tolerance * max(1.0, boot.outer_radius):
            meta["b_used"] = asymmetry_constant(C) + 1.0
            return done(boot, evaluations)
        w, b = boot.width, 2.0

    grid = build_translation_grid(C, center, w, cfg.epsilon, b)
    sol = _search(C, pts, grid, cfg)
    meta.update(b_used=b, points_per_axis=grid.points_per_axis)
    if cfg.hull_check:
        meta["center_in_hull"] = center_in_hull(pts, sol.center)
    return done(sol, evaluations + grid.n_points)
