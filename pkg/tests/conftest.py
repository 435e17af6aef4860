import numpy as np
import pytest

from mtcl.claw import ClawProblem
from mtcl.grid import Grid, GridFn
from mtcl.hamiltonians import Quadratic


@pytest.fixture
def burgers():
    return Quadratic(1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def step(u_left, u_right, x0=0.0):
    return lambda x: np.where(x < x0, u_left, u_right)


def riemann_problem(u_left, u_right, grid, h=None):
    h = Quadratic() if h is None else h
    return ClawProblem(h, h, GridFn.from_callable(step(u_left, u_right), grid))


def random_convex(rng, n=2001, half=2.0):
    """Convex GridFn with random nonnegative slope increments (ties included)."""
    grid = Grid(-half, half, n)
    jumps = rng.exponential(1.0, n - 2) * (rng.random(n - 2) < 0.7)
    slopes = np.concatenate(([0.0], np.cumsum(jumps)))
    slopes = slopes - slopes[rng.integers(0, slopes.size)]
    slopes = slopes / max(1.0, np.max(np.abs(slopes))) * rng.uniform(0.5, 3.0)
    vals = np.concatenate(([0.0], np.cumsum(slopes) * grid.dx))
    return GridFn(grid, vals + rng.normal())
