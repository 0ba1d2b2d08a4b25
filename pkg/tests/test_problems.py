import numpy as np
import pytest

from under_newton.errors import RankDeficient, ShapeMismatch
from under_newton.linalg import apply_pinv
from under_newton.model import fd_jacobian
from under_newton.problems import (
    BenchmarkId,
    Rng64,
    build,
    default_start,
    describe,
    lcp_strict_zero,
    lcp_toy,
    p1,
    p2,
    p3,
    p4,
    p4b,
    phi,
    phi_prime,
    sigmoid_problem,
)


def test_splitmix64_reference_output():
    assert Rng64(0).next_u64() == 0xE220A8397B1DCDAF


def test_rng_is_deterministic():
    a, b = Rng64(42), Rng64(42)
    np.testing.assert_array_equal(a.normals(10), b.normals(10))
    assert Rng64(42).next_u64() != Rng64(43).next_u64()


def test_rng_uniform_range(rng):
    values = [rng.uniform() for _ in range(1000)]
    assert all(0.0 <= u < 1.0 for u in values)


def test_rng_unit_vectors(rng):
    dirs = rng.unit_vectors(5, 4)
    np.testing.assert_allclose(np.linalg.norm(dirs, axis=1), 1.0)


def test_phi_values():
    assert phi(0.0) == 0.0
    assert phi_prime(0.0) == pytest.approx(0.5)
    t = np.linspace(-5.0, 5.0, 11)
    np.testing.assert_allclose(phi(-t), -phi(t))


def test_phi_prime_matches_differences():
    t = np.array([-3.0, -0.4, 0.7, 2.5])
    h = 1e-6
    np.testing.assert_allclose(phi_prime(t), (phi(t + h) - phi(t - h)) / (2 * h), atol=1e-7)


def test_sigmoid_problem_is_feasible():
    problem, x0 = sigmoid_problem(20, 10, seed=7)
    assert (problem.m, problem.n) == (20, 10)
    assert problem.name == "sigmoid-20x10"
    assert np.linalg.norm(problem.residual(problem.known_zero)) <= 1e-12
    assert x0.shape == (20,)
    np.testing.assert_allclose(
        problem.differential(x0), fd_jacobian(problem.residual, x0, 10), atol=1e-6
    )


def test_sigmoid_problem_is_seeded():
    first, x_first = sigmoid_problem(6, 3, seed=5)
    second, x_second = sigmoid_problem(6, 3, seed=5)
    np.testing.assert_array_equal(x_first, x_second)
    np.testing.assert_array_equal(first.parameters["C"], second.parameters["C"])


def test_sigmoid_requires_wide_system():
    with pytest.raises(ShapeMismatch):
        sigmoid_problem(5, 5, seed=0)


def test_p1_values():
    problem = p1()
    np.testing.assert_allclose(problem.residual([1.0, 0.0]), [0.0])
    np.testing.assert_allclose(problem.residual([0.0, 0.0]), [4.0])


def test_p2_rank_collapse_at_zero():
    problem = p2()
    zero = np.zeros(3)
    np.testing.assert_array_equal(problem.residual(zero), [0.0, 0.0])
    H = problem.differential(zero)
    np.testing.assert_array_equal(H, [[0.0, 0.0, -1.0], [0.0, 0.0, -1.1]])
    assert np.linalg.matrix_rank(H) == 1
    with pytest.raises(RankDeficient):
        apply_pinv(H, [1.0, 1.0])


def test_p3_circle_rows():
    angles = [0.3, 1.1, -2.0, 2.9]
    x = np.concatenate([[np.cos(a), np.sin(a)] for a in angles])
    np.testing.assert_allclose(p3().residual(x)[:4], 0.0, atol=1e-15)


def test_p4_origin_is_zero():
    np.testing.assert_array_equal(p4().residual(np.zeros(8)), np.zeros(5))


def test_p4b_embeds_fixed_values():
    x = np.array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6])
    full = np.array([0.1, 0.2, 0.3, 0.4, 0.5, 0.1, 0.6, 0.0])
    np.testing.assert_allclose(p4b().residual(x), p4().residual(full))


@pytest.mark.parametrize("benchmark", [b for b in BenchmarkId if b is not BenchmarkId.LCP_TOY])
def test_analytic_jacobians_match_differences(benchmark):
    problem, x0 = build(benchmark, seed=3)
    np.testing.assert_allclose(
        problem.differential(x0), fd_jacobian(problem.residual, x0, problem.n), atol=1e-5
    )


def _box_points(rng, count, dim, half_width=2.0):
    return [
        np.array([half_width * (2.0 * rng.uniform() - 1.0) for _ in range(dim)])
        for _ in range(count)
    ]


@pytest.mark.parametrize("benchmark", [b for b in BenchmarkId if b is not BenchmarkId.LCP_TOY])
def test_analytic_jacobians_match_differences_on_a_box(benchmark):
    problem, _ = build(benchmark, seed=5)
    for x in _box_points(Rng64(77), 200, problem.m):
        G = problem.residual(x)
        H = problem.differential(x)
        scale = 1.0 + np.max(np.abs(G)) + np.max(np.abs(H))
        np.testing.assert_allclose(H, fd_jacobian(problem.residual, x, problem.n), rtol=0, atol=1e-6 * scale)


def test_lcp_selection_matches_differences_off_ties():
    problem, _ = lcp_toy(5, seed=8)
    n = 5
    checked = 0
    for u in _box_points(Rng64(78), 100, problem.m):
        gaps = np.abs((1.0 - u[:n]) - u[n:2 * n])
        if np.any(gaps < 1e-6):
            continue
        np.testing.assert_allclose(
            problem.differential(u), fd_jacobian(problem.residual, u, problem.n), rtol=0, atol=1e-6
        )
        checked += 1
    assert checked > 90


def test_lcp_toy_dimensions():
    problem, x0 = lcp_toy(4, seed=1)
    assert (problem.m, problem.n) == (12, 8)
    assert not problem.smooth
    assert x0.shape == (12,)


def test_lcp_strict_zero():
    problem, _ = lcp_toy(6, seed=2)
    zero = lcp_strict_zero(problem, seed=2)
    np.testing.assert_allclose(problem.residual(zero), 0.0, atol=1e-12)
    x, y = zero[:6], zero[6:12]
    assert np.all(np.maximum(1.0 - x, y) >= 0.1)


@pytest.mark.parametrize("benchmark", list(BenchmarkId))
def test_default_start_is_deterministic(benchmark):
    np.testing.assert_array_equal(default_start(benchmark, 11), default_start(benchmark, 11))


def test_fixed_benchmarks_reject_dims():
    with pytest.raises(ShapeMismatch):
        build(BenchmarkId.P1, dims=(3, 2))


def test_describe():
    rows = dict((name, (m, n)) for name, m, n in describe())
    assert rows == {
        "sigmoid": (20, 10),
        "p1": (2, 1),
        "p2": (3, 2),
        "p3": (8, 7),
        "p3b": (8, 6),
        "p4": (8, 5),
        "p4b": (6, 5),
        "lcp": (30, 20),
    }
