"""Small polynomial systems from interval-solver test sets.

P1 (two circles as one product equation), P2 (cone/paraboloid pair with a
rank-collapsed zero), P3 (inverse kinematics, 8 unknowns), P4 (chemical
equilibrium, 8 unknowns) and the reduced variants P3b and P4b.
"""

import numpy as np

from under_newton.model import Problem, smooth_problem

# P4b holds x6 and x8 fixed and solves for the remaining six unknowns
P4B_FIXED = {5: 0.1, 7: 0.0}
P4B_FREE = (0, 1, 2, 3, 4, 6)


def _p1_residual(x: np.ndarray) -> np.ndarray:
    r = x[0] ** 2 + x[1] ** 2
    return np.array([(r - 4.0) * (r - 1.0)])


def _p1_jacobian(x: np.ndarray) -> np.ndarray:
    r = x[0] ** 2 + x[1] ** 2
    return (2.0 * x * (2.0 * r - 5.0))[None, :]


def p1_distance(x: np.ndarray) -> float:
    """dist(x, 𝒵) for P1, whose zero set is the circles of radius 1 and 2."""
    radius = float(np.linalg.norm(x))
    return min(abs(radius - 1.0), abs(radius - 2.0))


def p1() -> Problem:
    return smooth_problem(
        _p1_residual, _p1_jacobian, m=2, n=1, name="p1",
        known_zero=np.array([2.0, 0.0]), distance=p1_distance,
    )


def _p2_residual(x: np.ndarray) -> np.ndarray:
    r = x[0] ** 2 + x[1] ** 2
    return np.array([r - x[2], r - 1.1 * x[2]])


def _p2_jacobian(x: np.ndarray) -> np.ndarray:
    return np.array([
        [2.0 * x[0], 2.0 * x[1], -1.0],
        [2.0 * x[0], 2.0 * x[1], -1.1],
    ])


def p2_distance(x: np.ndarray) -> float:
    """The only zero of P2 is the origin."""
    return float(np.linalg.norm(x))


def p2() -> Problem:
    return smooth_problem(
        _p2_residual, _p2_jacobian, m=3, n=2, name="p2",
        known_zero=np.zeros(3), distance=p2_distance,
    )


def _p3_residual(x: np.ndarray) -> np.ndarray:
    x1, x2, x3, x4, x5, x6, x7, x8 = x
    return np.array([
        x1 ** 2 + x2 ** 2 - 1.0,
        x3 ** 2 + x4 ** 2 - 1.0,
        x5 ** 2 + x6 ** 2 - 1.0,
        x7 ** 2 + x8 ** 2 - 1.0,
        0.004731 * x1 * x2 - 0.3578 * x2 * x3 - 0.1238 * x1 - 0.001637 * x2
        - 0.9338 * x4 + x7,
        0.2238 * x1 * x3 + 0.7623 * x2 * x3 + 0.2638 * x1 - 0.07745 * x2
        - 0.6734 * x4 - 0.6022,
        x6 * x8 + 0.3578 * x1 + 0.004731 * x2,
    ])


def _p3_jacobian(x: np.ndarray) -> np.ndarray:
    x1, x2, x3, x4, x5, x6, x7, x8 = x
    jac = np.zeros((7, 8))
    jac[0, 0:2] = 2.0 * x1, 2.0 * x2
    jac[1, 2:4] = 2.0 * x3, 2.0 * x4
    jac[2, 4:6] = 2.0 * x5, 2.0 * x6
    jac[3, 6:8] = 2.0 * x7, 2.0 * x8
    jac[4, 0] = 0.004731 * x2 - 0.1238
    jac[4, 1] = 0.004731 * x1 - 0.3578 * x3 - 0.001637
    jac[4, 2] = -0.3578 * x2
    jac[4, 3] = -0.9338
    jac[4, 6] = 1.0
    jac[5, 0] = 0.2238 * x3 + 0.2638
    jac[5, 1] = 0.7623 * x3 - 0.07745
    jac[5, 2] = 0.2238 * x1 + 0.7623 * x2
    jac[5, 3] = -0.6734
    jac[6, 0] = 0.3578
    jac[6, 1] = 0.004731
    jac[6, 5] = x8
    jac[6, 7] = x6
    return jac


def p3() -> Problem:
    return smooth_problem(_p3_residual, _p3_jacobian, m=8, n=7, name="p3")


def p3b() -> Problem:
    """P3 without its last equation."""
    return smooth_problem(
        lambda x: _p3_residual(x)[:6],
        lambda x: _p3_jacobian(x)[:6],
        m=8, n=6, name="p3b",
    )


def _p4_residual(x: np.ndarray) -> np.ndarray:
    x1, x2, x3, x4, x5, x6, x7, x8 = x
    return np.array([
        -3.933 * x1 + 0.107 * x2 + 0.126 * x3 - 9.99 * x5 - 45.83 * x7
        - 7.64 * x8 - 0.727 * x2 * x3 + 8.39 * x3 * x4 - 684.4 * x4 * x5
        + 63.5 * x4 * x7,
        -0.987 * x2 - 22.95 * x4 - 28.37 * x6 + 0.949 * x1 * x3 + 0.173 * x1 * x5,
        0.002 * x1 - 0.235 * x3 + 5.67 * x5 + 0.921 * x7 - 6.51 * x8
        - 0.716 * x1 * x2 - 1.578 * x1 * x4 + 1.132 * x4 * x7,
        x1 - x4 - 0.168 * x6 - x1 * x2,
        -x3 - 0.196 * x5 - 0.0071 * x7 + x1 * x4,
    ])


def _p4_jacobian(x: np.ndarray) -> np.ndarray:
    x1, x2, x3, x4, x5, x6, x7, x8 = x
    jac = np.zeros((5, 8))
    jac[0] = [
        -3.933,
        0.107 - 0.727 * x3,
        0.126 - 0.727 * x2 + 8.39 * x4,
        8.39 * x3 - 684.4 * x5 + 63.5 * x7,
        -9.99 - 684.4 * x4,
        0.0,
        -45.83 + 63.5 * x4,
        -7.64,
    ]
    jac[1] = [0.949 * x3 + 0.173 * x5, -0.987, 0.949 * x1, -22.95, 0.173 * x1, -28.37, 0.0, 0.0]
    jac[2] = [
        0.002 - 0.716 * x2 - 1.578 * x4,
        -0.716 * x1,
        -0.235,
        -1.578 * x1 + 1.132 * x7,
        5.67,
        0.0,
        0.921 + 1.132 * x4,
        -6.51,
    ]
    jac[3] = [1.0 - x2, -x1, 0.0, -1.0, 0.0, -0.168, 0.0, 0.0]
    jac[4] = [x4, 0.0, -1.0, x1, -0.196, 0.0, -0.0071, 0.0]
    return jac


def p4() -> Problem:
    return smooth_problem(
        _p4_residual, _p4_jacobian, m=8, n=5, name="p4", known_zero=np.zeros(8),
    )


def _p4b_embed(x: np.ndarray) -> np.ndarray:
    full = np.empty(8)
    full[list(P4B_FREE)] = x
    for index, value in P4B_FIXED.items():
        full[index] = value
    return full


def p4b() -> Problem:
    """P4 with x6 = 0.1 and x8 = 0 substituted; unknowns (x1, …, x5, x7)."""
    free = list(P4B_FREE)
    return smooth_problem(
        lambda x: _p4_residual(_p4b_embed(x)),
        lambda x: _p4_jacobian(_p4b_embed(x))[:, free],
        m=6, n=5, name="p4b",
    )
