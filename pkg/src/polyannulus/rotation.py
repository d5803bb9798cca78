"""Rotation tolerances and the rotation + translation search."""

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .annulus import annulus_at, as_points
from .errors import GridTooLarge, InvalidParameter, SlimnessDiverged
from .polytope import (Rotation, bottleneck_angle, rotate, rotation_from_angles,
                       rotational_symmetry_order)
from .translation import SolverConfig, mwa_translation

__all__ = [
    "RotationGrid", "alpha_bound_exact", "alpha_bound_simple", "build_rotation_grid",
    "mwa_rigid", "mwa_rotation_only", "rotation_from_angles", "scale_factor",
]


def _check_theta(theta):
    if not 0.0 < theta < 0.5 * math.pi:
        raise InvalidParameter(f"theta must be in (0, pi/2), got {theta}")


def scale_factor(theta, alpha):
    """Growth ``sin(pi - theta - alpha) / sin(theta)`` of a shape rotated by ``alpha``.

    Scaling the rotated shape by this factor makes it contain the original
    whenever ``theta`` is the shape's bottleneck angle.
    """
    _check_theta(theta)
    if not 0.0 <= alpha < math.pi - theta:
        raise InvalidParameter(f"alpha must be in [0, pi - theta), got {alpha}")
    return math.sin(math.pi - theta - alpha) / math.sin(theta)


def _check_bound_args(theta, f, epsilon, strict_eps=True):
    _check_theta(theta)
    if not f > 1.0:
        raise InvalidParameter(f"slimness must exceed 1, got {f}")
    if epsilon < 0 or (strict_eps and epsilon == 0):
        raise InvalidParameter(f"epsilon must be positive, got {epsilon}")


def alpha_bound_exact(theta, f, epsilon):
    """Largest rotation keeping a fixed-center annulus within ``1 + epsilon``.

    Solves ``s f / sin(theta) - (f - 1) sin(theta) / s = 1 + epsilon`` for
    ``s = sin(gamma)`` and returns ``arcsin(s) - theta``.  The arcsine
    argument is clamped to 1.
    """
    _check_bound_args(theta, f, epsilon)
    e1 = 1.0 + epsilon
    s = math.sin(theta) / (2.0 * f) * (e1 + math.sqrt(e1 * e1 + 4.0 * f * (f - 1.0)))
    return math.asin(max(-1.0, min(1.0, s))) - theta


def alpha_bound_simple(theta, f, epsilon):
    """The linear lower bound ``theta * epsilon / (2 f)`` on the exact bound."""
    _check_bound_args(theta, f, epsilon, strict_eps=False)
    return theta * epsilon / (2.0 * f)


@dataclass(frozen=True)
class RotationGrid:
    """Tuples of ``d - 1`` angles drawn from ``{0, h, 2h, ...}``, ``h = 2 pi / k``.

    In the plane, a polygon with ``s``-fold rotational symmetry only needs
    the angles below ``2 pi / s``; ``count`` is the reduced per-axis count.
    """

    dim: int
    k: int
    theta: float
    f_hat: float
    epsilon: float
    count: int = None

    def __post_init__(self):
        if self.count is None:
            object.__setattr__(self, "count", self.k)

    @property
    def step(self):
        return 2.0 * math.pi / self.k

    @property
    def target_diagonal(self):
        return self.theta * self.epsilon / self.f_hat

    @property
    def size(self):
        return self.count ** (self.dim - 1)

    def angles(self):
        axis = [j * self.step for j in range(self.count)]
        return itertools.product(axis, repeat=self.dim - 1)

    @property
    def diagnostics(self):
        return {"theta": self.theta, "f_hat": self.f_hat, "target_diagonal": self.target_diagonal}


def _ceil(x):
    r = round(x)
    return int(r) if abs(x - r) <= 1e-9 * max(1.0, abs(x)) else math.ceil(x)


def build_rotation_grid(dim, theta, f_hat, epsilon, max_orientations=None, symmetry=1):
    """Direction grid whose cell diagonal is at most ``theta * epsilon / f_hat``."""
    _check_theta(theta)
    if not f_hat > 1.0:
        raise InvalidParameter(f"f_hat must exceed 1, got {f_hat}")
    if not epsilon > 0:
        raise InvalidParameter(f"epsilon must be positive, got {epsilon}")
    k = _ceil(2.0 * math.pi * f_hat * math.sqrt(dim - 1) / (theta * epsilon))
    count = k
    if dim == 2 and symmetry > 1:
        count = _ceil(k / symmetry)
    grid = RotationGrid(dim, k, theta, f_hat, epsilon, count)
    if max_orientations is not None and grid.size > max_orientations:
        raise GridTooLarge(
            f"{grid.size} orientations exceed the cap of {max_orientations}", required=grid.size)
    return grid


def _rigid_meta(mode, dim, grid, retries):
    meta = {"mode": mode, "f_hat": grid.f_hat, "orientations": grid.size,
            "retries": retries, "theta": grid.theta}
    if dim >= 3:
        meta["rotation_family"] = "givens-subfamily"
    return meta


def _short_meta(mode, dim):
    meta = {"mode": mode, "orientations": 1, "retries": 0}
    if dim >= 3:
        meta["rotation_family"] = "givens-subfamily"
    return meta


def _f_estimate(sol):
    if sol.width <= 0.0:
        return math.inf
    return sol.outer_radius / sol.width


def _orientation_search(C, pts, cfg, xi, solve_one, mode, f_hat, cost, seed_sol=None):
    """Best-of over the orientation grid, raising ``f_hat`` until consistent.

    ``cost`` is the number of evaluations one orientation takes; the grid is
    refused when orientations times ``cost`` exceed the evaluation cap.
    ``seed_sol`` is an extra identity-orientation candidate ranked first.
    """
    theta = bottleneck_angle(C)
    symmetry = rotational_symmetry_order(C)
    d = C.dim
    zero = cfg.tolerance * max(1.0, float(np.abs(pts).max()))
    evaluations = 0

    def run(angles):
        rot = Rotation(d, angles)
        sol = solve_one(C if rot.is_identity else rotate(C, rot))
        sol.rotation = rot
        return sol

    for retry in range(cfg.max_retries + 1):
        grid = build_rotation_grid(d, theta, f_hat, xi, cfg.max_orientations, symmetry)
        required = grid.size * cost
        if required > cfg.max_evaluations:
            raise GridTooLarge(
                f"{grid.size} orientations x {cost} evaluations exceed the cap "
                f"{cfg.max_evaluations}", required=required)
        if cfg.threads > 1:
            with ThreadPoolExecutor(cfg.threads) as pool:
                sols = list(pool.map(run, grid.angles()))
        else:
            sols = [run(a) for a in grid.angles()]
        evaluations += sum(s.evaluations for s in sols)
        # ties go to the lowest orientation index
        j = min(range(len(sols)), key=lambda i: (sols[i].width, i))
        best = sols[j]
        if seed_sol is not None and seed_sol.width <= best.width:
            best = seed_sol
        if best.width <= zero or _f_estimate(best) <= f_hat:
            best.evaluations = evaluations
            best.meta = {**best.meta, **_rigid_meta(mode, d, grid, retry)}
            return best
        # at least double; jump straight to the observed estimate when larger
        f_hat = max(2.0 * f_hat, _f_estimate(best))
    raise SlimnessDiverged(
        f"slimness estimate still growing after {cfg.max_retries} retries (last {f_hat / 2:.4g})")


def mwa_rigid(C, S, cfg=None):
    """(1+eps)-approximate minimum-width annulus under rotations and translations.

    Runs the translation solver at ``xi = sqrt(1 + eps) - 1`` for every
    orientation of a direction grid sized by the bottleneck angle and a
    slimness estimate; the estimate doubles until the winner's own slimness
    ``R / width`` no longer exceeds it.
    """
    cfg = cfg or SolverConfig()
    start = time.perf_counter()
    pts = as_points(S, C.dim)
    xi = math.sqrt(1.0 + cfg.epsilon) - 1.0
    inner = cfg.with_epsilon(xi)
    first = mwa_translation(C, pts, inner)
    if first.width <= cfg.tolerance * max(1.0, float(np.abs(pts).max())):
        first.meta = {**first.meta, **_short_meta("rigid", C.dim)}
        first.epsilon = cfg.epsilon
        return first
    f_hat = max(1.0 + 1e-3, _f_estimate(first))
    # the identity pose at the caller's epsilon keeps rigid never worse than translation-only
    plain = mwa_translation(C, pts, cfg)
    plain.rotation = Rotation.identity(C.dim)
    best = _orientation_search(C, pts, cfg, xi, lambda shape: mwa_translation(shape, pts, inner),
                               "rigid", f_hat, first.evaluations, plain)
    best.epsilon = cfg.epsilon
    best.elapsed = time.perf_counter() - start
    best.meta["xi"] = xi
    return best


def mwa_rotation_only(C, S, center, cfg=None):
    """Best orientation of ``C`` for a fixed annulus center."""
    cfg = cfg or SolverConfig()
    start = time.perf_counter()
    pts = as_points(S, C.dim)
    center = np.asarray(center, dtype=float)
    first = annulus_at(C, pts, center)
    if first.width <= cfg.tolerance * max(1.0, float(np.abs(pts).max())):
        first.epsilon = cfg.epsilon
        first.meta = _short_meta("rotation-only", C.dim)
        return first
    f_hat = max(1.0 + 1e-3, _f_estimate(first))
    best = _orientation_search(C, pts, cfg, cfg.epsilon,
                               lambda shape: annulus_at(shape, pts, center),
                               "rotation-only", f_hat, 1)
    best.epsilon = cfg.epsilon
    best.elapsed = time.perf_counter() - start
    return best
