import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from conftest import cube3, hexagon, square, tetrahedron, triangle_t
from polyannulus.errors import EmptyCloud
from polyannulus.lp import lexmin, seidel_lp
from polyannulus.minball import maxball_at, minball
from polyannulus.polytope import gauge

SHAPES = [square, hexagon, triangle_t, cube3, tetrahedron]


def grid_radius(C, pts, lo, hi, k=200):
    axis = [np.linspace(lo[i], hi[i], k) for i in range(2)]
    G = np.array(np.meshgrid(*axis, indexing="ij")).reshape(2, -1).T
    r = np.max(gauge(C, pts[None, :, :] - G[:, None, :]), axis=1)
    return r.min(), (hi - lo).max() / (k - 1)


def test_single_point(T):
    p = minball(T, [[3.0, -2.0]])
    assert p.radius == pytest.approx(0, abs=1e-12) and np.allclose(p.center, [3, -2], atol=1e-12)


def test_square_segment_lexicographic(sq):
    p = minball(sq, [[0, 0], [4, 2]])
    assert p.radius == pytest.approx(2, rel=1e-9)
    assert np.allclose(p.center, [2, 0], atol=1e-9)


def test_triangle_against_grid(T):
    pts = np.array([[0.0, 0.0], [0.0, 2.0]])
    p = minball(T, pts)
    best, cell = grid_radius(T, pts, np.array([-3.0, -3.0]), np.array([3.0, 5.0]))
    # gauge is 2-Lipschitz in the max-norm for T (||n||_1 <= 3, offset 1), half a cell away
    assert p.radius <= best + 1e-12
    assert p.radius >= best - 3 * cell


def test_empty(sq):
    with pytest.raises(EmptyCloud):
        minball(sq, np.zeros((0, 2)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SHAPES), st.integers(0, 2**31), st.integers(1, 60))
def test_feasible_and_tight(make, seed, n):
    C = make()
    pts = np.random.default_rng(seed).normal(size=(n, C.dim)) * 5
    p = minball(C, pts)
    g = gauge(C, pts - p.center)
    assert np.all(g <= p.radius + 1e-9)
    # at the optimum at least one point is on the boundary
    assert g.max() == pytest.approx(p.radius, abs=1e-9)


@pytest.mark.parametrize("make", SHAPES)
def test_optimal_against_highs(make):
    C = make()
    d = C.dim
    for seed in range(20):
        pts = np.random.default_rng(seed).normal(size=(40, d)) * 3
        # min R  s.t.  -n.c - b R <= -n.p  for every (point, facet)
        A = np.vstack([np.column_stack([-np.tile(n, (len(pts), 1)), -np.full(len(pts), b)])
                       for n, b in zip(C.normals, C.offsets)])
        rhs = np.concatenate([-(pts @ n) for n in C.normals])
        res = linprog(np.eye(d + 1)[d], A_ub=A, b_ub=rhs, bounds=[(None, None)] * d + [(0, None)],
                      method="highs")
        assert minball(C, pts).radius == pytest.approx(res.fun, rel=1e-9, abs=1e-9)


def test_shrinking_radius_is_infeasible():
    C = triangle_t()
    pts = np.random.default_rng(5).normal(size=(25, 2))
    p = minball(C, pts)
    shrunk = p.radius - 1e-6 * (1 + p.radius)
    assert np.any(gauge(C, pts - p.center) > shrunk)


def test_small_instances_against_grid():
    for make in (square, hexagon, triangle_t):
        C = make()
        for seed in range(5):
            pts = np.random.default_rng(seed).uniform(-2, 2, size=(20, 2))
            p = minball(C, pts)
            best, cell = grid_radius(C, pts, np.array([-3.0, -3.0]), np.array([3.0, 3.0]), 120)
            L = float(np.max(np.abs(C.normals).sum(axis=1) / C.offsets))
            assert p.radius <= best + 1e-12
            assert p.radius >= best - L * cell


def test_seed_determinism(T):
    pts = np.random.default_rng(9).normal(size=(200, 2))
    a, b = minball(T, pts, seed=4), minball(T, pts, seed=4)
    assert a.center.tobytes() == b.center.tobytes() and a.radius == b.radius


def test_large_cloud_runs(hx):
    pts = np.random.default_rng(0).normal(size=(100_000, 2))
    p = minball(hx, pts)
    assert np.all(gauge(hx, pts - p.center) <= p.radius + 1e-9)


def test_maxball(sq, T):
    assert maxball_at(sq, [[1, 0], [3, 3]], [0, 0]).radius == 1
    assert maxball_at(sq, [[1, 0], [3, 3]], [3, 3]).radius == 0
    assert maxball_at(T, [[-1, -1]], [0, 0]).radius == pytest.approx(3)


class TestSeidel:
    def test_against_highs(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            d = int(rng.integers(1, 5))
            m = int(rng.integers(1, 15))
            A = rng.normal(size=(m, d))
            b = rng.uniform(0.1, 2.0, size=m)  # origin feasible
            c = rng.normal(size=d)
            lo, hi = -np.full(d, 10.0), np.full(d, 10.0)
            x = seidel_lp(A, b, c, lo, hi, seed=int(rng.integers(1000)))
            ref = linprog(c, A_ub=A, b_ub=b, bounds=list(zip(lo, hi)), method="highs")
            assert np.all(A @ x <= b + 1e-9) and np.all(x >= lo - 1e-9) and np.all(x <= hi + 1e-9)
            assert c @ x == pytest.approx(ref.fun, rel=1e-7, abs=1e-7)

    def test_lexmin_tie_break(self):
        # minimize y over the square: whole bottom edge optimal, then x smallest
        A = np.zeros((0, 2))
        x = lexmin(A, np.zeros(0), [np.array([0.0, 1.0]), np.array([1.0, 0.0])],
                   np.array([-1.0, -1.0]), np.array([1.0, 1.0]))
        assert np.allclose(x, [-1, -1])

    def test_seed_independent_optimum(self):
        rng = np.random.default_rng(2)
        A = rng.normal(size=(30, 3))
        b = rng.uniform(0.5, 1.0, 30)
        c = rng.normal(size=3)
        vals = {round(float(c @ seidel_lp(A, b, c, -np.ones(3) * 5, np.ones(3) * 5, seed=s)), 9)
                for s in range(10)}
        assert len(vals) == 1


def test_rotated_cube_degenerate_elimination():
    # opposite facets become parallel rows after elimination; rounding left
    # a flat row at -1e-12 that used to be reported as infeasible
    from polyannulus.polytope import Rotation, rotate
    C = cube3()
    pts = np.vstack([3 * C.vertices, 2.7 * C.vertices]) + np.array([0.1, 0.2, 0.3])
    R = rotate(C, Rotation(3, (3.1932203389830507, 0.0)))
    p = minball(R, pts)
    assert np.all(gauge(R, pts - p.center) <= p.radius + 1e-9)
