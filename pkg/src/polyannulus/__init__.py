"""Approximate minimum-width annuli whose shells are scaled copies of a convex polytope."""

from .annulus import AnnulusSolution, PointCloud, annulus_at, fatness_stats
from .errors import *  # noqa: F401,F403
from .grid import TranslationGrid, build_translation_grid
from .minball import Placement, maxball_at, minball
from .oracle import OracleReport, brute_force_oracle, dense_angle_scan
from .planar import build_line_projection_index, fast_mwa_sweep, locate_slab
from .polytope import (ConvexPolytope, Cube, Rotation, asymmetry_constant, bottleneck_angle,
                       distance, from_halfspaces, from_vertices, gauge, is_centrally_symmetric,
                       largest_enclosed_cube, regular_polygon, rotate, rotation_from_angles,
                       smallest_enclosing_cube)
from .render import render_svg
from .rotation import (RotationGrid, alpha_bound_exact, alpha_bound_simple, build_rotation_grid,
                       mwa_rigid, mwa_rotation_only, scale_factor)
from .sampler import GeneratedInstance, GeneratorSpec, sample_boundary
from .translation import SolverConfig, constant_factor_mwa, evaluate_grid, mwa_translation

__version__ = "0.1.0"
