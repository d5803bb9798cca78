"""Brute-force reference solver used to check the approximation guarantees.

Translation mode is a branch and bound over cubic cells of candidate
centers.  A cell of half side ``h`` around ``g`` holds only centers whose
convex distance to ``g`` is at most ``t = h * max_s gauge(s)`` in either
direction (``s`` ranging over the sign vectors), so no center in it beats
``width(g) - 2 t``.  Cells that cannot beat the incumbent are dropped and
the rest are split.  The search starts from the cube enclosing the MinBall
center plus twice the constant-factor width times ``C``, which contains the
optimal center whenever every facet of the optimal annulus holds a sample.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .annulus import annulus_at, as_points, radii_block, scaled_projection
from .errors import InvalidParameter, TooLargeForOracle
from .minball import minball
from .polytope import (Rotation, bottleneck_angle, gauge, rotate,
                       rotational_symmetry_order, smallest_enclosing_cube)
from .rotation import scale_factor

MAX_POINTS = 1000
MAX_CELLS = 10_000_000


@dataclass
class OracleReport:
    lower: float
    upper: float
    center: np.ndarray
    angles: tuple = ()
    schedule: list = field(default_factory=list)
    slack: float = 0.0
    evaluations: int = 0

    def to_dict(self):
        return {
            "lower": self.lower, "upper": self.upper,
            "center": [float(x) for x in self.center], "angles": list(self.angles),
            "schedule": self.schedule, "slack": self.slack, "evaluations": self.evaluations,
        }


def _widths(C, pts, centers):
    inner, outer = radii_block(scaled_projection(C, pts), scaled_projection(C, centers))
    return outer - inner


def cube_closeness(C, half_side):
    """Largest convex distance, either way, across a cube of the given half side."""
    signs = np.array(list(itertools.product((-1.0, 1.0), repeat=C.dim)))
    return half_side * float(gauge(C, signs).max())


def _translation_bnb(C, pts, center, radius, base, levels, split, max_cells):
    d = C.dim
    cube = smallest_enclosing_cube(C, center, radius)
    h = cube.half_side / base
    axis = cube.center[None, :] + (2 * np.arange(base) - (base - 1))[:, None] * h
    cells = np.array([axis[list(ix), range(d)] for ix in itertools.product(range(base), repeat=d)])
    best_w = float(_widths(C, pts, center[None, :])[0])
    best_c = np.asarray(center, dtype=float).copy()
    evaluations = 1
    schedule = []
    offsets = (2 * np.arange(split) - (split - 1)) / split
    children = np.array(list(itertools.product(offsets, repeat=d)))

    def tie(w):
        return 1e-12 * max(1.0, abs(w))

    for level in range(levels + 1):
        widths = _widths(C, pts, cells)
        evaluations += cells.shape[0]
        # widths can be constant along whole rays of centers; among near ties
        # keep the one closest to the starting center
        low = float(widths.min())
        near = np.flatnonzero(widths <= low + tie(low))
        k = int(near[np.argmin(gauge(C, cells[near] - center))])
        if widths[k] < best_w - tie(best_w) or (
                widths[k] <= best_w + tie(best_w)
                and gauge(C, cells[k] - center) < gauge(C, best_c - center)):
            best_w, best_c = min(best_w, float(widths[k])), cells[k].copy()
        t = cube_closeness(C, h)
        schedule.append({"half_side": h, "t": t, "cells": int(cells.shape[0])})
        if level == levels:
            break
        keep = cells[widths - 2.0 * t <= best_w]
        if keep.shape[0] * children.shape[0] > max_cells:
            break
        cells = (keep[:, None, :] + h * children[None, :, :]).reshape(-1, d)
        h = h / split
    t_final = schedule[-1]["t"]
    return best_w, best_c, t_final, schedule, evaluations


def brute_force_oracle(C, S, mode="translation", levels=3, base=None, split=3,
                       angle_steps=90, seed=0):
    """Bracket the optimal width: ``lower <= optimum <= upper``.

    ``upper`` is the best width found and ``lower = upper - slack`` with
    ``slack = 2 t`` for the finest cell resolution ``t`` reached (plus a
    rotation term from the angle step in rigid mode).
    """
    pts = as_points(S, C.dim)
    if pts.shape[0] > MAX_POINTS:
        raise TooLargeForOracle(f"oracle accepts at most {MAX_POINTS} points")
    d = C.dim
    base = base or (41 if d == 2 else 17)
    if base ** d > MAX_CELLS:
        raise TooLargeForOracle("initial grid too large")

    def translation(shape):
        c = minball(shape, pts, seed=seed).center
        w0 = annulus_at(shape, pts, c).width
        scale = max(1.0, float(np.abs(pts).max()))
        radius = max(2.0 * w0, 1e-9 * scale)
        return _translation_bnb(shape, pts, c, radius, base, levels, split, MAX_CELLS)

    if mode == "translation":
        w, c, t, schedule, evals = translation(C)
        return OracleReport(w - 2.0 * t, w, c, (), schedule, 2.0 * t, evals)

    if mode != "rigid":
        raise InvalidParameter(f"unknown oracle mode {mode!r}")
    if d != 2:
        raise TooLargeForOracle("rigid oracle is limited to the plane")
    period = 2.0 * math.pi / rotational_symmetry_order(C)
    step = period / angle_steps
    best = None
    floor = math.inf
    evals = 0
    for j in range(angle_steps):
        rot = Rotation(2, (j * step,))
        w, c, t, schedule, e = translation(rotate(C, rot))
        evals += e
        floor = min(floor, w - 2.0 * t)
        if best is None or w < best[0]:
            best = (w, c, t, schedule, rot)
    w, c, t, schedule, rot = best
    theta = bottleneck_angle(C)
    sf = scale_factor(theta, 0.5 * step)
    outer = annulus_at(rotate(C, rot), pts, c).outer_radius
    rot_slack = (sf - 1.0 / sf) * sf * outer
    slack = (w - floor) + rot_slack
    return OracleReport(w - slack, w, c, rot.angles, schedule, slack, evals)


def dense_angle_scan(C, S, center, steps=3600):
    """Thinnest fixed-center annulus over ``steps`` evenly spaced planar orientations.

    Returns ``(width, angle)``.  Only the symmetry period of ``C`` is scanned.
    """
    if C.dim != 2:
        raise TooLargeForOracle("angle scan is limited to the plane")
    pts = as_points(S, 2)
    center = np.asarray(center, dtype=float)
    period = 2.0 * math.pi / rotational_symmetry_order(C)
    best = (math.inf, 0.0)
    for j in range(steps):
        angle = j * period / steps
        w = annulus_at(rotate(C, Rotation(2, (angle,))), pts, center).width
        if w < best[0]:
            best = (w, angle)
    return best
