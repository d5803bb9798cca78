"""Timing runs of the solvers on generated planar instances."""

import csv
import io
import math
import time

import numpy as np

from .polytope import Rotation, regular_polygon
from .rotation import mwa_rigid
from .sampler import GeneratorSpec, delta_for_count, sample_boundary
from .translation import SolverConfig, mwa_translation

HEADER = ["n", "epsilon", "dim", "mode", "ms", "evaluations", "width"]


def bench_instance(C, n, seed=0, band=0.05, scale=10.0):
    rng = np.random.default_rng(seed)
    spec = GeneratorSpec(C, rng.uniform(-scale, scale, 2), Rotation(2, (rng.uniform(0, 2 * math.pi),)),
                         scale, delta_for_count(C, n, scale), band, seed)
    return sample_boundary(spec).points


def _row(n, eps, mode, sol, ms):
    return {"n": n, "epsilon": eps, "dim": 2, "mode": mode, "ms": round(ms, 3),
            "evaluations": int(sol.evaluations), "width": repr(float(sol.width))}


def run_bench(ns=(10_000, 100_000, 1_000_000), epsilons=(0.2, 0.1, 0.05), shape=None,
              seed=0, direct_limit=2e8, rigid_max_n=10_000, rigid_epsilons=(0.2,)):
    """Time the direct and planar translation paths, and the rigid solver.

    Direct runs whose ``n * gridpoints`` would exceed ``direct_limit`` are
    skipped.  The rigid solver runs only for ``rigid_epsilons`` and at most
    ``rigid_max_n`` points.
    """
    C = shape or regular_polygon(6)
    rows = []
    for n in ns:
        pts = bench_instance(C, n, seed)
        for eps in epsilons:
            planar = None
            for mode, flag in (("planar", True), ("direct", False)):
                cfg = SolverConfig(epsilon=eps, seed=seed, planar=flag)
                if mode == "direct" and planar is not None:
                    if pts.shape[0] * planar.meta.get("points_per_axis", 1) ** 2 > direct_limit:
                        continue
                t = time.perf_counter()
                sol = mwa_translation(C, pts, cfg)
                rows.append(_row(pts.shape[0], eps, mode, sol, 1000 * (time.perf_counter() - t)))
                planar = planar or sol
            if eps in rigid_epsilons and pts.shape[0] <= rigid_max_n:
                t = time.perf_counter()
                sol = mwa_rigid(C, pts, SolverConfig(epsilon=eps, seed=seed, max_evaluations=10**9))
                rows.append(_row(pts.shape[0], eps, "rigid", sol, 1000 * (time.perf_counter() - t)))
    return rows


def to_csv(rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
