import numpy as np
import pytest

from under_newton.diagnostics import (
    certify_zero,
    estimate_order,
    nd_residual,
    nd_scan,
    nd_threshold,
)
from under_newton.errors import InsufficientData, NotAZero, ZeroSeparation
from under_newton.linalg import apply_pinv
from under_newton.problems import SMOOTH_BENCHMARKS, BenchmarkId, build, lcp_strict_zero, lcp_toy
from under_newton.solver import SolveConfig, solve


def test_nd_residual_vanishes_on_affine_maps(affine_problem, rng):
    for _ in range(10):
        assert nd_residual(affine_problem, rng.normals(4), rng.normals(4)) <= 1e-12


@pytest.mark.parametrize("delta", [1e-1, 1e-2, 1e-3, 1e-4])
def test_nd_residual_p1_is_linear_in_distance(p1_problem, delta):
    xbar = np.array([2.0, 0.0])
    x = xbar + delta * np.array([1.0, 1.0]) / np.sqrt(2.0)
    # half the Hessian norm bound of (r − 4)(r − 1) near radius 2
    assert nd_residual(p1_problem, x, xbar) <= 25.0 * delta


def test_nd_residual_zero_separation(p1_problem):
    with pytest.raises(ZeroSeparation):
        nd_residual(p1_problem, [2.0, 0.0], [2.0, 0.0])


def test_nd_residual_lcp_same_branch():
    problem, _ = lcp_toy(3, seed=4)
    xbar = lcp_strict_zero(problem, seed=4)
    direction = np.linspace(-1.0, 1.0, 9)
    x = xbar + 1e-3 * direction / np.linalg.norm(direction)
    assert nd_residual(problem, x, xbar) <= 1e-9


def test_nd_scan_linear_problem(affine_problem):
    origin = np.zeros(4)
    H = affine_problem.differential(origin)
    anchor = apply_pinv(H, -affine_problem.residual(origin))
    assert np.linalg.norm(affine_problem.residual(anchor)) <= 1e-12
    scan = nd_scan(affine_problem, anchor, directions=8)
    assert len(scan.worst_ratio) == len(scan.radii) == 6
    assert max(scan.worst_ratio) <= 1e-12


@pytest.mark.parametrize("benchmark", [BenchmarkId.SIGMOID, BenchmarkId.P1, BenchmarkId.P2, BenchmarkId.P4])
def test_nd_scan_smooth_benchmarks(benchmark):
    problem, _ = build(benchmark, seed=1)
    scan = nd_scan(problem, problem.known_zero, directions=16)
    assert scan.worst_ratio[-1] <= nd_threshold(problem, problem.known_zero)
    assert scan.worst_ratio[-1] <= scan.worst_ratio[0]


def test_nd_scan_sigmoid_small_radius():
    problem, _ = build(BenchmarkId.SIGMOID, seed=2)
    scan = nd_scan(problem, problem.known_zero, directions=16)
    assert scan.worst_ratio[-1] <= 1e-5


def test_nd_scan_reuses_directions(p1_problem):
    first = nd_scan(p1_problem, [2.0, 0.0], directions=4, seed=9)
    second = nd_scan(p1_problem, [2.0, 0.0], directions=4, seed=9)
    assert first.worst_ratio == second.worst_ratio


def test_nd_scan_requires_a_zero(p1_problem):
    with pytest.raises(NotAZero):
        nd_scan(p1_problem, [3.0, 0.0])


def test_nd_scan_validates_radii(p1_problem):
    with pytest.raises(ValueError):
        nd_scan(p1_problem, [2.0, 0.0], radii=[1e-3, 1e-2])

@pytest.mark.parametrize("directions", [0, -3])
def test_nd_scan_rejects_empty_direction_sets(p1_problem, directions):
    with pytest.raises(ValueError):
        nd_scan(p1_problem, [2.0, 0.0], directions=directions)



def test_nd_scan_complementarity_strict_zero():
    problem, _ = lcp_toy(10, seed=3)
    anchor = lcp_strict_zero(problem, seed=3)
    scan = nd_scan(problem, anchor, directions=16, radii=(1e-2, 1e-4, 1e-6))
    assert scan.worst_ratio[-1] <= 1e-6


@pytest.mark.parametrize("order, series", [
    (2.0, [0.5 ** (2 ** k) for k in range(7)]),
    (1.0, [0.5 ** k for k in range(30)]),
    (1.5, [0.5 ** (1.5 ** k) for k in range(12)]),
])
def test_estimate_order_synthetic(order, series):
    estimate = estimate_order(series, floor=1e-13)
    assert estimate.order == pytest.approx(order, abs=0.05)
    assert estimate.points_used == len(estimate.c_sequence)


def test_estimate_order_floor_drops_pairs():
    estimate = estimate_order([1e-1, 1e-2, 1e-4, 1e-8, 1e-16, 0.0], floor=1e-13)
    assert estimate.points_used == 3
    assert estimate.order == pytest.approx(2.0, abs=0.05)


def test_estimate_order_tail_counts_iterates():
    series = [0.5 ** k for k in range(10)] + [1e-5, 1e-10]
    estimate = estimate_order(series, floor=1e-13, tail=3)
    assert estimate.points_used == 2
    assert estimate.c_sequence[-1] == pytest.approx(1e-5)


@pytest.mark.parametrize("tail", [0, 1, 2])
def test_estimate_order_tail_needs_three_iterates(tail):
    with pytest.raises(ValueError):
        estimate_order([1.0, 0.1, 1e-3, 1e-7], floor=1e-13, tail=tail)


def test_estimate_order_tail_skips_preasymptotic_iterates():
    # sigmoid 20x10 seed 3; the full fit is dragged down by the first step
    series = [5.988, 0.4619, 5.631e-3, 2.451e-5, 5.281e-10, 2.619e-15]
    assert estimate_order(series, floor=1e-13).order < 1.8
    assert estimate_order(series, floor=1e-13, tail=3).order == pytest.approx(1.976, abs=0.01)


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_sigmoid_residual_tail_is_superlinear(seed):
    problem, x0 = build(BenchmarkId.SIGMOID, seed=seed, dims=(20, 10))
    trace = solve(problem, x0, config=SolveConfig(residual_tol=1e-12, max_iter=15))
    assert trace.converged
    assert estimate_order(trace.residual_norms, floor=1e-13, tail=3).order >= 1.8


def test_estimate_order_insufficient_data():
    with pytest.raises(InsufficientData) as excinfo:
        estimate_order([1.0, 1e-20], floor=1e-13)
    assert excinfo.value.usable_pairs == 0


def test_p3b_residuals_superlinear():
    problem, x0 = build(BenchmarkId.P3B)
    trace = solve(problem, x0)
    assert trace.converged
    assert estimate_order(trace.residual_norms, floor=1e-13, tail=3).order >= 1.8


def test_certify_zero():
    problem, x0 = build(BenchmarkId.P3)
    zero = certify_zero(problem, x0)
    assert np.linalg.norm(problem.residual(zero)) <= 1e-10


def test_certify_zero_rejects_unfinished_solves(p1_problem):
    with pytest.raises(NotAZero) as excinfo:
        certify_zero(p1_problem, [3.0, 4.0], SolveConfig(max_iter=1))
    assert excinfo.value.residual_norm > 1e-10


def test_smooth_benchmark_list():
    assert BenchmarkId.LCP_TOY not in SMOOTH_BENCHMARKS
    assert len(SMOOTH_BENCHMARKS) == 7
