"""Dense linear algebra behind the Newton step.

Vectors are float64 arrays of shape ``(dim,)`` and matrices float64 arrays
of shape ``(rows, cols)`` stored row-major (C order). The pseudo-inverse of
a full-row-rank ``H`` is applied as ``Hᵀ (H Hᵀ)⁻¹ v`` through a Cholesky
factor of the n×n Gram matrix; ``H⁺`` itself is only formed on request.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import cho_solve

from under_newton.errors import NonFiniteValue, RankDeficient, ShapeMismatch

DEFAULT_PIVOT_TOL = 1e-12


def as_vector(values, dim: Optional[int] = None, name: str = "vector") -> np.ndarray:
    """Coerce to a finite float64 vector, optionally of a fixed dimension."""
    vec = np.ascontiguousarray(values, dtype=np.float64)
    if vec.ndim != 1:
        raise ShapeMismatch(f"{name} must be one-dimensional, got shape {vec.shape}")
    if dim is not None and vec.shape[0] != dim:
        raise ShapeMismatch(f"{name} must have dimension {dim}, got {vec.shape[0]}")
    if not np.all(np.isfinite(vec)):
        raise NonFiniteValue(f"{name} has non-finite entries")
    return vec


def as_matrix(values, shape: Optional[Tuple[int, int]] = None, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite row-major float64 matrix, optionally of a fixed shape."""
    mat = np.ascontiguousarray(values, dtype=np.float64)
    if mat.ndim != 2:
        raise ShapeMismatch(f"{name} must be two-dimensional, got shape {mat.shape}")
    if shape is not None and mat.shape != tuple(shape):
        raise ShapeMismatch(f"{name} must have shape {tuple(shape)}, got {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise NonFiniteValue(f"{name} has non-finite entries")
    return mat


def _wide(H) -> np.ndarray:
    mat = as_matrix(H, name="H")
    n, m = mat.shape
    if n > m:
        raise ShapeMismatch(f"H must have no more rows than columns, got {n}x{m}")
    if n == 0:
        raise ShapeMismatch("H must have at least one row")
    return mat


@dataclass(frozen=True)
class RankReport:
    """Outcome of factoring H Hᵀ.

    ``smallest_pivot`` is the smallest accepted pivot, or the rejected one
    when the factorization stopped early.
    """
    effective_rank: int
    smallest_pivot: float
    full_row_rank: bool


@dataclass(frozen=True)
class GramFactor:
    """Lower Cholesky factor L of H Hᵀ = L Lᵀ, reusable across right-hand sides."""
    H: np.ndarray
    lower: np.ndarray
    report: RankReport

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve (H Hᵀ) w = rhs."""
        return cho_solve((self.lower, True), rhs)

    def apply_pinv(self, v: np.ndarray) -> np.ndarray:
        """Return Hᵀ (H Hᵀ)⁻¹ v."""
        return self.H.T @ self.solve(v)


def gram_factorization(H, pivot_tol: float = DEFAULT_PIVOT_TOL) -> Tuple[GramFactor, RankReport]:
    """Factor H Hᵀ, rejecting pivots below pivot_tol × max(diag(H Hᵀ))."""
    if not pivot_tol > 0:
        raise ValueError(f"pivot_tol must be positive, got {pivot_tol}")
    mat = _wide(H)
    n = mat.shape[0]
    gram = mat @ mat.T
    threshold = pivot_tol * float(np.max(np.diag(gram)))

    lower = np.zeros((n, n))
    smallest = math.inf
    for j in range(n):
        row = lower[j, :j]
        pivot = gram[j, j] - row @ row
        # `not >` so a NaN pivot is rejected as well
        if not pivot > threshold:
            report = RankReport(effective_rank=j, smallest_pivot=abs(float(pivot)), full_row_rank=False)
            raise RankDeficient(
                f"Gram matrix pivot {pivot:.3e} at row {j} is below {threshold:.3e}",
                report
            )
        smallest = min(smallest, float(pivot))
        lower[j, j] = math.sqrt(pivot)
        lower[j + 1:, j] = (gram[j + 1:, j] - lower[j + 1:, :j] @ row) / lower[j, j]

    report = RankReport(effective_rank=n, smallest_pivot=smallest, full_row_rank=True)
    return GramFactor(H=mat, lower=lower, report=report), report


def apply_pinv(H, v, pivot_tol: float = DEFAULT_PIVOT_TOL) -> np.ndarray:
    """Return H⁺v = Hᵀ(H Hᵀ)⁻¹v for a full-row-rank H."""
    factor, _ = gram_factorization(H, pivot_tol)
    rhs = as_vector(v, factor.H.shape[0], name="v")
    return factor.apply_pinv(rhs)


def materialize_pinv(H, pivot_tol: float = DEFAULT_PIVOT_TOL) -> np.ndarray:
    """Return the explicit m×n pseudo-inverse. Meant for tests and diagnostics."""
    factor, _ = gram_factorization(H, pivot_tol)
    n = factor.H.shape[0]
    return factor.H.T @ factor.solve(np.eye(n))


def project_affine(x, H, b, pivot_tol: float = DEFAULT_PIVOT_TOL) -> np.ndarray:
    """Euclidean projection of x onto {y : H y = b}."""
    factor, _ = gram_factorization(H, pivot_tol)
    n, m = factor.H.shape
    point = as_vector(x, m, name="x")
    target = as_vector(b, n, name="b")
    return point - factor.apply_pinv(factor.H @ point - target)
