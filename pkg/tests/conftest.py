import math

import numpy as np
import pytest

from polyannulus.polytope import Rotation, from_vertices, regular_polygon
from polyannulus.sampler import GeneratorSpec, delta_for_count, sample_boundary


def square():
    return from_vertices(2, [[1, 1], [-1, 1], [-1, -1], [1, -1]])


def hexagon():
    return regular_polygon(6)


def triangle_t():
    return from_vertices(2, [[1, 1], [-1, 1], [0, -1]])


def cube3():
    return from_vertices(3, [[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])


def tetrahedron():
    # asymmetric: the origin is off the centroid
    return from_vertices(3, [[1.5, -0.5, -0.5], [-0.5, 1.5, -0.5], [-0.5, -0.5, 1.5], [-0.7, -0.7, -0.7]])


SHAPES_2D = {"square": square, "hexagon": hexagon, "T": triangle_t}


def make_instance(C, n=150, band=0.05, scale=5.0, seed=0, rotate=False):
    """Sampled boundary of a randomly posed ``scale * C`` with relative band ``band``."""
    rng = np.random.default_rng(seed)
    d = C.dim
    angles = tuple(rng.uniform(0, 2 * math.pi, d - 1)) if rotate else (0.0,) * (d - 1)
    spec = GeneratorSpec(C, rng.uniform(-3, 3, d), Rotation(d, angles), scale,
                         delta_for_count(C, n, scale), band, seed)
    return sample_boundary(spec)


@pytest.fixture
def sq():
    return square()


@pytest.fixture
def hx():
    return hexagon()


@pytest.fixture
def T():
    return triangle_t()
