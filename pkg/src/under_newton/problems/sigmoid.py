"""Random sigmoid system G(x)_i = φ((Cx)_i − b_i) − y_i."""

from typing import Tuple

import numpy as np

from under_newton.errors import ShapeMismatch
from under_newton.model import Problem, smooth_problem
from under_newton.problems.rng import Rng64

START_PERTURBATION = 0.5


def phi(t):
    """φ(t) = t / (1 + e^{−|t|})."""
    t = np.asarray(t, dtype=np.float64)
    return t / (1.0 + np.exp(-np.abs(t)))


def phi_prime(t):
    """φ'(t) = (1 + e^{−|t|} + |t|·e^{−|t|}) / (1 + e^{−|t|})², equal to 1/2 at 0."""
    t = np.asarray(t, dtype=np.float64)
    decay = np.exp(-np.abs(t))
    return (1.0 + decay + np.abs(t) * decay) / (1.0 + decay) ** 2


def sigmoid_problem(m: int, n: int, seed: int) -> Tuple[Problem, np.ndarray]:
    """Feasible seeded instance and its starting point.

    Draw order from ``Rng64(seed)``: C (row-major), b, x*, start perturbation.
    The targets are y = φ(C x* − b), so x* is a zero by construction.
    """
    if not 1 <= n < m:
        raise ShapeMismatch(f"sigmoid system needs 1 <= n < m, got m={m}, n={n}")
    rng = Rng64(seed)
    C = rng.normal_matrix(n, m)
    b = rng.normals(n)
    x_star = rng.normals(m)
    y = phi(C @ x_star - b)
    x0 = x_star + START_PERTURBATION * rng.normals(m)

    def residual(x: np.ndarray) -> np.ndarray:
        return phi(C @ x - b) - y

    def jacobian(x: np.ndarray) -> np.ndarray:
        return phi_prime(C @ x - b)[:, None] * C

    problem = smooth_problem(
        residual,
        jacobian,
        m=m,
        n=n,
        name=f"sigmoid-{m}x{n}",
        known_zero=x_star,
        parameters={"C": C, "b": b, "y": y},
    )
    return problem, x0
