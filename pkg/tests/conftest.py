"""Shared fixtures."""

import numpy as np
import pytest

from under_newton.model import smooth_problem
from under_newton.problems import Rng64, build


@pytest.fixture
def rng():
    return Rng64(12345)


@pytest.fixture
def p1_problem():
    problem, _ = build("p1")
    return problem


@pytest.fixture
def affine_problem():
    """G(x) = Hx − b with a fixed 2×4 H."""
    H = np.array([[1.0, 2.0, 0.0, -1.0], [0.5, 0.0, 3.0, 1.0]])
    b = np.array([1.0, -2.0])
    return smooth_problem(lambda x: H @ x - b, lambda x: H, m=4, n=2, name="affine")


@pytest.fixture
def unit_circle_problem():
    """Single equation x₁² + x₂² − 1 = 0."""
    return smooth_problem(
        lambda x: np.array([x[0] ** 2 + x[1] ** 2 - 1.0]),
        lambda x: 2.0 * x[None, :],
        m=2, n=1, name="circle",
    )
