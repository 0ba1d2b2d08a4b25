import numpy as np
import pytest

from under_newton.errors import NonFiniteValue, RankDeficient, ShapeMismatch
from under_newton.linalg import (
    apply_pinv,
    as_vector,
    gram_factorization,
    materialize_pinv,
    project_affine,
)
from under_newton.verification import kkt_projection


@pytest.mark.parametrize("H, v, expected", [
    ([[2.0, 0.0, 0.0]], [3.0], [1.5, 0.0, 0.0]),
    (np.eye(2), [0.7, -4.0], [0.7, -4.0]),
    ([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]], [2.0, 5.0], [1.0, 1.0, 5.0]),
])
def test_apply_pinv_examples(H, v, expected):
    np.testing.assert_allclose(apply_pinv(H, v), expected, atol=1e-14)


def test_apply_pinv_is_minimum_norm_solution(rng):
    H = rng.normal_matrix(3, 7)
    v = rng.normals(3)
    y = apply_pinv(H, v)
    np.testing.assert_allclose(H @ y, v, atol=1e-12)
    # minimum norm: no component along ker H
    np.testing.assert_allclose(y, np.linalg.pinv(H) @ v, atol=1e-12)


def test_materialize_pinv_examples():
    np.testing.assert_allclose(materialize_pinv([[2.0, 0.0, 0.0]]), [[0.5], [0.0], [0.0]])
    np.testing.assert_allclose(materialize_pinv(np.eye(2)), np.eye(2), atol=1e-15)


def test_materialize_pinv_identities(rng):
    A = rng.normal_matrix(3, 5)
    P = materialize_pinv(A)
    assert P.shape == (5, 3)
    np.testing.assert_allclose(A @ P @ A, A, atol=1e-10)
    np.testing.assert_allclose(P @ A @ P, P, atol=1e-10)
    np.testing.assert_allclose(A @ P, np.eye(3), atol=1e-10)
    np.testing.assert_allclose((P @ A).T, P @ A, atol=1e-10)


@pytest.mark.parametrize("x, H, b, expected", [
    ([1.0, 1.0], [[1.0, 1.0]], [0.0], [0.0, 0.0]),
    ([2.0, 0.0], [[4.0, 0.0]], [5.0], [1.25, 0.0]),
])
def test_project_affine_examples(x, H, b, expected):
    np.testing.assert_allclose(project_affine(x, H, b), expected, atol=1e-14)


def test_project_affine_fixes_points_on_the_set():
    H = np.array([[1.0, 2.0, 3.0]])
    x = np.array([1.0, 1.0, -1.0])
    np.testing.assert_allclose(project_affine(x, H, H @ x), x, atol=1e-15)


def test_project_affine_matches_kkt_oracle(rng):
    for _ in range(20):
        H = rng.normal_matrix(3, 6)
        x = rng.normals(6)
        b = rng.normals(3)
        y = project_affine(x, H, b)
        np.testing.assert_allclose(y, kkt_projection(x, H, b), atol=1e-10)
        np.testing.assert_allclose(H @ y, b, atol=1e-10)
        np.testing.assert_allclose(project_affine(y, H, b), y, atol=1e-10)


def test_gram_factorization_identity():
    _, report = gram_factorization(np.eye(3))
    assert report.full_row_rank
    assert report.effective_rank == 3
    assert report.smallest_pivot == pytest.approx(1.0)


def test_gram_factorization_duplicated_row():
    H = np.array([[1.0, 2.0, 3.0], [1.0, 2.0, 3.0]])
    with pytest.raises(RankDeficient) as excinfo:
        gram_factorization(H)
    assert excinfo.value.report.effective_rank == 1
    assert not excinfo.value.report.full_row_rank


def test_gram_factorization_random_full_rank(rng):
    H = rng.normal_matrix(4, 9)
    factor, report = gram_factorization(H)
    assert report.full_row_rank
    assert np.linalg.matrix_rank(H) == 4
    np.testing.assert_allclose(factor.lower @ factor.lower.T, H @ H.T, atol=1e-12)


def test_gram_factorization_threshold_is_relative():
    H = np.array([[1e8, 0.0, 0.0], [0.0, 1e-3, 0.0]])
    with pytest.raises(RankDeficient):
        gram_factorization(H)
    _, report = gram_factorization(H, pivot_tol=1e-24)
    assert report.full_row_rank


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        apply_pinv(np.ones((3, 2)), [1.0, 2.0, 3.0])
    with pytest.raises(ShapeMismatch):
        apply_pinv(np.eye(2), [1.0, 2.0, 3.0])
    with pytest.raises(ShapeMismatch):
        project_affine([1.0, 2.0], [[1.0, 1.0, 1.0]], [0.0])


def test_non_finite_input_rejected():
    with pytest.raises(NonFiniteValue):
        as_vector([1.0, np.nan])
    with pytest.raises(NonFiniteValue):
        apply_pinv([[np.inf, 0.0]], [1.0])


def test_pivot_tol_must_be_positive():
    with pytest.raises(ValueError):
        gram_factorization(np.eye(2), pivot_tol=0.0)
