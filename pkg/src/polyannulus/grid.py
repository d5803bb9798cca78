"""Candidate-center lattices and the shared best-gridpoint rule."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter
from .polytope import centered_cube_half_side, largest_enclosed_cube, smallest_enclosing_cube

# widths closer than this (relative to the outer radius) count as ties
TIE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class TranslationGrid:
    """Cubic lattice ``origin + spacing * (i_0, ..., i_{d-1})``.

    Gridpoints are numbered lexicographically, ``i_0`` most significant.
    ``closeness`` is the convex distance, in both directions, within which
    every point of the covered cube has a gridpoint.
    """

    origin: np.ndarray
    spacing: float
    points_per_axis: int
    w: float = 0.0
    b: float = 1.0
    epsilon: float = 1.0
    closeness: float = 0.0
    shape: object = None

    @property
    def dim(self):
        return self.origin.shape[0]

    @property
    def n_points(self):
        return self.points_per_axis ** self.dim

    def axis(self):
        return np.arange(self.points_per_axis, dtype=float) * self.spacing

    def index(self, flat):
        return np.unravel_index(int(flat), (self.points_per_axis,) * self.dim)

    def point(self, flat):
        return self.origin + self.spacing * np.array(self.index(flat), dtype=float)

    def points(self, start=0, stop=None):
        """Gridpoints ``start .. stop-1`` in flat order, as an array."""
        stop = self.n_points if stop is None else stop
        idx = np.array(np.unravel_index(np.arange(start, stop), (self.points_per_axis,) * self.dim)).T
        return self.origin + self.spacing * idx.astype(float)

    @property
    def diagnostics(self):
        F = float("nan")
        if self.shape is not None:
            outer = smallest_enclosing_cube(self.shape, np.zeros(self.dim), 1.0)
            F = outer.side / largest_enclosed_cube(self.shape).side
        return {"w": self.w, "b": self.b, "F_cube": F}


def build_translation_grid(C, center, w, epsilon, b):
    """Grid over the cube enclosing ``center + w C`` fine enough for ``epsilon``.

    Cells are cubes of half side ``t * h`` where ``t = epsilon w / (2 b)`` and
    ``h`` is the half side of the largest origin-centered cube in ``C``.  Every
    point of the covered cube then lies within convex distance ``t`` of a
    gridpoint, measured either way.
    """
    if not (w > 0 and math.isfinite(w)):
        raise InvalidParameter(f"w must be positive, got {w}")
    if not epsilon > 0:
        raise InvalidParameter(f"epsilon must be positive, got {epsilon}")
    if not b >= 1:
        raise InvalidParameter(f"b must be at least 1, got {b}")
    t = epsilon * w / (2.0 * b)
    spacing = t * 2.0 * centered_cube_half_side(C)
    Q = smallest_enclosing_cube(C, center, w)
    k = math.ceil(Q.side / spacing * (1.0 - 1e-12)) + 1
    k = max(k, 2)
    origin = Q.center - 0.5 * (k - 1) * spacing
    return TranslationGrid(np.asarray(origin, dtype=float), spacing, k, w, b, epsilon, t, C)


def select_best(inner, outer):
    """Flat index of the thinnest annulus; near-ties go to the smallest index."""
    width = outer - inner
    k = int(np.argmin(width))
    tol = TIE_RTOL * max(1.0, abs(float(outer[k])))
    return int(np.flatnonzero(width <= width[k] + tol)[0])
