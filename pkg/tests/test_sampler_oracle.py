import math

import numpy as np
import pytest

from conftest import SHAPES_2D, cube3, make_instance, tetrahedron
from polyannulus.errors import FacetUnsampled, InvalidParameter, TooLargeForOracle
from polyannulus.oracle import brute_force_oracle, cube_closeness, dense_angle_scan
from polyannulus.polytope import Rotation, gauge, rotate
from polyannulus.sampler import GeneratorSpec, delta_for_count, perimeter, sample_boundary
from polyannulus.translation import SolverConfig, mwa_translation


def boundary_probes(C, spec, count, rng):
    """Uniform random points on the posed boundary (2D)."""
    W = spec.translation + spec.scale * rotate(C, spec.rotation).vertices
    edges = rng.integers(0, C.n_vertices, count)
    t = rng.uniform(0, 1, count)[:, None]
    return W[edges] + t * (W[(edges + 1) % C.n_vertices] - W[edges])


class TestSampler:
    def test_square_edge_counts(self, sq):
        inst = sample_boundary(GeneratorSpec(sq, delta=0.1))
        pts = inst.points
        for normal in sq.normals:
            on_edge = np.isclose(pts @ normal, 1.0)
            assert on_edge.sum() >= 21
        assert inst.width == 0.0

    def test_zero_band_oracle_width(self, sq):
        inst = sample_boundary(GeneratorSpec(sq, delta=0.1))
        assert brute_force_oracle(sq, inst.points).upper <= 1e-12

    @pytest.mark.parametrize("name", sorted(SHAPES_2D))
    def test_delta_uniform(self, name):
        C = SHAPES_2D[name]()
        rng = np.random.default_rng(3)
        spec = GeneratorSpec(C, np.array([0.5, -1.0]), Rotation(2, (0.7,)), 3.0, 0.05, 0.0, 1)
        pts = sample_boundary(spec).points
        probes = boundary_probes(C, spec, 1000, rng)
        nearest = np.min(np.linalg.norm(probes[:, None] - pts[None], axis=2), axis=1)
        assert nearest.max() <= spec.delta

    def test_band_bookkeeping(self, T):
        spec = GeneratorSpec(T, np.array([1.0, 2.0]), Rotation(2, (0.3,)), 2.0, 0.1, 0.05, 9)
        inst = sample_boundary(spec)
        g = gauge(rotate(T, spec.rotation), inst.points - spec.translation)
        assert inst.inner_radius == g.min() and inst.outer_radius == g.max()
        assert inst.width == g.max() - g.min()
        assert 1.0 - spec.band <= g.min() / spec.scale and g.max() / spec.scale <= 1.0 + spec.band

    def test_deterministic(self, hx):
        spec = GeneratorSpec(hx, np.zeros(2), Rotation(2, (0.2,)), 1.0, 0.05, 0.1, 4)
        assert np.array_equal(sample_boundary(spec).points, sample_boundary(spec).points)
        other = GeneratorSpec(hx, np.zeros(2), Rotation(2, (0.2,)), 1.0, 0.05, 0.1, 5)
        assert not np.array_equal(sample_boundary(spec).points, sample_boundary(other).points)

    def test_facet_unsampled(self, sq):
        with pytest.raises(FacetUnsampled):
            sample_boundary(GeneratorSpec(sq, delta=2.5))

    def test_certified(self, T):
        assert sample_boundary(GeneratorSpec(T, delta=0.3)).certified

    @pytest.mark.parametrize("make", [cube3, tetrahedron])
    def test_3d(self, make):
        C = make()
        inst = make_instance(C, n=300, band=0.0, seed=2)
        assert inst.certified
        assert inst.width < 1e-9 * inst.outer_radius + 1e-12

    @pytest.mark.parametrize("kwargs", [dict(delta=0.0), dict(band=1.0), dict(band=-0.1),
                                        dict(scale=0.0)])
    def test_invalid(self, sq, kwargs):
        with pytest.raises(InvalidParameter):
            GeneratorSpec(sq, **kwargs)

    def test_delta_for_count(self, hx):
        inst = sample_boundary(GeneratorSpec(hx, delta=delta_for_count(hx, 600, 2.0), scale=2.0))
        assert 600 <= inst.points.shape[0] <= 600 + 3 * hx.n_vertices
        assert perimeter(hx, 2.0) == pytest.approx(12.0)


class TestOracle:
    def test_zero_width(self, hx):
        inst = make_instance(hx, n=120, band=0.0, seed=1)
        rep = brute_force_oracle(hx, inst.points)
        assert rep.upper <= 1e-9
        assert rep.lower >= -rep.slack - 1e-12
        assert rep.slack == pytest.approx(2 * rep.schedule[-1]["t"])

    @pytest.mark.parametrize("seed", range(12))
    def test_sandwich(self, seed):
        # the generated width bounds the optimum from above, so the oracle may
        # beat it but never by more than its own slack
        C = list(SHAPES_2D.values())[seed % 3]()
        inst = make_instance(C, n=100, band=0.02 + 0.01 * seed, seed=seed)
        rep = brute_force_oracle(C, inst.points)
        assert rep.lower <= inst.width
        assert rep.upper <= inst.width + rep.slack
        assert rep.lower <= rep.upper

    @pytest.mark.parametrize("seed", range(5))
    def test_refinement_monotone(self, seed):
        C = list(SHAPES_2D.values())[seed % 3]()
        inst = make_instance(C, n=80, band=0.05, seed=seed)
        uppers = [brute_force_oracle(C, inst.points, levels=k).upper for k in range(4)]
        assert all(b <= a for a, b in zip(uppers, uppers[1:]))

    @pytest.mark.parametrize("seed", range(8))
    def test_solver_not_below_lower(self, seed):
        C = list(SHAPES_2D.values())[seed % 3]()
        inst = make_instance(C, n=120, band=0.08, seed=seed, rotate=True)
        rep = brute_force_oracle(C, inst.points)
        sol = mwa_translation(C, inst.points, SolverConfig(epsilon=0.25))
        assert sol.width >= rep.lower - 1e-9

    def test_3d_sandwich(self):
        C = tetrahedron()
        inst = make_instance(C, n=150, band=0.05, seed=3)
        rep = brute_force_oracle(C, inst.points)
        assert rep.lower <= inst.width

    def test_too_many_points(self, sq):
        with pytest.raises(TooLargeForOracle):
            brute_force_oracle(sq, np.random.default_rng(0).normal(size=(1001, 2)))

    def test_rigid_3d_refused(self):
        C = cube3()
        with pytest.raises(TooLargeForOracle):
            brute_force_oracle(C, make_instance(C, n=100).points, mode="rigid")

    def test_unknown_mode(self, sq):
        with pytest.raises(InvalidParameter):
            brute_force_oracle(sq, make_instance(sq).points, mode="affine")

    def test_cube_closeness(self, sq, T):
        assert cube_closeness(sq, 0.5) == pytest.approx(0.5)
        # (1, -1) leaves T through the edge 2x - y = 1, gauge 3
        assert cube_closeness(T, 1.0) == pytest.approx(3.0)

    def test_rigid_sandwich(self, sq):
        inst = make_instance(sq, n=100, band=0.05, seed=6, rotate=True)
        rep = brute_force_oracle(sq, inst.points, mode="rigid", levels=2, angle_steps=30)
        assert rep.lower <= inst.width
        assert len(rep.angles) == 1

    def test_dense_angle_scan(self, sq):
        spec = GeneratorSpec(sq, np.zeros(2), Rotation(2, (math.pi / 8,)), 1.0, 0.1, 0.0, 0)
        inst = sample_boundary(spec)
        w, angle = dense_angle_scan(sq, inst.points, np.zeros(2), steps=360)
        assert w <= 1e-12
        assert angle == pytest.approx(math.pi / 8)
