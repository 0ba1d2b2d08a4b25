"""Complementarity toy model G(x, y, z) = [Ax + b − y + z; min(1 − x, y)]."""

from typing import Tuple

import numpy as np

from under_newton.errors import ShapeMismatch
from under_newton.model import BranchRule, Problem, min_residual_and_differential
from under_newton.problems.rng import Rng64


def lcp_toy(n: int, seed: int, rule: BranchRule = BranchRule.FIRST_ARGUMENT) -> Tuple[Problem, np.ndarray]:
    """Seeded instance with unknowns (x, y, z) ∈ R^{3n} and its starting point.

    Draw order from ``Rng64(seed)``: A (row-major), b, x0.
    """
    if n < 1:
        raise ShapeMismatch(f"complementarity toy needs n >= 1, got {n}")
    rng = Rng64(seed)
    A = rng.normal_matrix(n, n)
    b = rng.normals(n)
    x0 = rng.normals(3 * n)
    return lcp_from_data(A, b, rule), x0


def lcp_from_data(A, b, rule: BranchRule = BranchRule.FIRST_ARGUMENT) -> Problem:
    """Complementarity toy for given A (n×n) and b (n)."""
    A = np.array(A, dtype=np.float64)
    b = np.array(b, dtype=np.float64)
    n = b.shape[0]
    if A.shape != (n, n):
        raise ShapeMismatch(f"A must be {n}x{n}, got {A.shape}")

    eye = np.eye(n)
    zero = np.zeros((n, n))
    linear_rows = np.hstack([A, -eye, eye])
    x_branch = np.hstack([-eye, zero, zero])
    y_branch = np.hstack([zero, eye, zero])

    def split(u: np.ndarray):
        return u[:n], u[n:2 * n], u[2 * n:]

    def residual(u: np.ndarray) -> np.ndarray:
        x, y, z = split(u)
        value, _ = min_residual_and_differential(1.0 - x, y, x_branch, y_branch, rule)
        return np.concatenate([A @ x + b - y + z, value])

    def differential(u: np.ndarray) -> np.ndarray:
        x, y, _ = split(u)
        _, rows = min_residual_and_differential(1.0 - x, y, x_branch, y_branch, rule)
        return np.vstack([linear_rows, rows])

    return Problem(
        name=f"lcp-{n}",
        m=3 * n,
        n=2 * n,
        residual_map=residual,
        differential_map=differential,
        smooth=False,
        parameters={"A": A, "b": b},
    )


def lcp_strict_zero(problem: Problem, seed: int, margin: float = 0.1) -> np.ndarray:
    """A zero of ``problem`` at which every min component is strictly complementary.

    Component i either has y_i = 0 with 1 − x_i ≥ margin, or x_i = 1 with
    y_i ≥ margin; z then closes the linear block.
    """
    A = problem.parameters["A"]
    b = problem.parameters["b"]
    n = b.shape[0]
    rng = Rng64(seed)
    x = np.empty(n)
    y = np.empty(n)
    for i in range(n):
        gap = margin + abs(rng.normal())
        if rng.uniform() < 0.5:
            x[i], y[i] = 1.0 - gap, 0.0
        else:
            x[i], y[i] = 1.0, gap
    z = y - A @ x - b
    return np.concatenate([x, y, z])
