"""Problem abstraction: a residual map paired with a Newton-differential selection."""

import sys
from dataclasses import dataclass, field, replace
from enum import Enum
from types import MappingProxyType
from typing import Callable, Mapping, Optional, Tuple

import numpy as np

from under_newton.errors import NonFiniteResidual, ShapeMismatch
from under_newton.linalg import as_matrix, as_vector

ResidualMap = Callable[[np.ndarray], np.ndarray]
DifferentialMap = Callable[[np.ndarray], np.ndarray]

KNOWN_ZERO_TOL = 1e-10
_FD_SCALE = np.sqrt(sys.float_info.epsilon)


class BranchRule(str, Enum):
    """Which argument's row to take where a componentwise min has a tie."""
    FIRST_ARGUMENT = "first"
    SECOND_ARGUMENT = "second"


@dataclass(frozen=True, eq=False)
class Problem:
    """G: R^m → R^n with one deterministic element H(x) of its Newton differential."""
    name: str
    m: int
    n: int
    residual_map: ResidualMap = field(repr=False)
    differential_map: DifferentialMap = field(repr=False)
    known_zero: Optional[np.ndarray] = None
    smooth: bool = True
    distance: Optional[Callable[[np.ndarray], float]] = field(default=None, repr=False)
    parameters: Mapping[str, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.n < 1 or self.n > self.m:
            raise ShapeMismatch(f"{self.name}: need 1 <= n <= m, got m={self.m}, n={self.n}")
        object.__setattr__(self, "parameters", MappingProxyType(dict(self.parameters)))
        if self.known_zero is not None:
            zero = as_vector(self.known_zero, self.m, name=f"{self.name} known zero")
            zero.flags.writeable = False
            object.__setattr__(self, "known_zero", zero)
            norm = float(np.linalg.norm(self.residual(zero)))
            if norm > KNOWN_ZERO_TOL:
                raise ValueError(f"{self.name}: known zero has residual norm {norm:.3e}")

    def residual(self, x) -> np.ndarray:
        """Evaluate G(x)."""
        point = as_vector(x, self.m, name="x")
        with np.errstate(over="ignore", invalid="ignore"):
            value = np.asarray(self.residual_map(point), dtype=np.float64)
        if value.shape != (self.n,):
            raise ShapeMismatch(f"{self.name}: residual has shape {value.shape}, expected ({self.n},)")
        if not np.all(np.isfinite(value)):
            raise NonFiniteResidual(f"{self.name}: non-finite residual", point)
        return value

    def differential(self, x) -> np.ndarray:
        """Evaluate the selected H ∈ 𝓗G(x)."""
        point = as_vector(x, self.m, name="x")
        with np.errstate(over="ignore", invalid="ignore"):
            value = np.asarray(self.differential_map(point), dtype=np.float64)
        if value.shape != (self.n, self.m):
            raise ShapeMismatch(
                f"{self.name}: differential has shape {value.shape}, expected ({self.n}, {self.m})"
            )
        if not np.all(np.isfinite(value)):
            raise NonFiniteResidual(f"{self.name}: non-finite differential", point)
        return value


def fd_jacobian(residual: ResidualMap, x, n: int) -> np.ndarray:
    """Central-difference Jacobian with steps sqrt(eps)·(1 + |x_j|)."""
    point = as_vector(x, name="x")
    jac = np.empty((n, point.shape[0]))
    for j in range(point.shape[0]):
        h = _FD_SCALE * (1.0 + abs(point[j]))
        forward = point.copy()
        backward = point.copy()
        forward[j] += h
        backward[j] -= h
        with np.errstate(over="ignore", invalid="ignore"):
            g_plus = np.asarray(residual(forward), dtype=np.float64)
            g_minus = np.asarray(residual(backward), dtype=np.float64)
        if not (np.all(np.isfinite(g_plus)) and np.all(np.isfinite(g_minus))):
            raise NonFiniteResidual(f"non-finite residual while differencing coordinate {j}", point)
        if g_plus.shape != (n,) or g_minus.shape != (n,):
            raise ShapeMismatch(f"residual has shape {g_plus.shape}, expected ({n},)")
        jac[:, j] = (g_plus - g_minus) / (2.0 * h)
    return jac


def min_residual_and_differential(
    a, b, Ja, Jb, rule: BranchRule = BranchRule.FIRST_ARGUMENT
) -> Tuple[np.ndarray, np.ndarray]:
    """Componentwise min(a, b) and the matching Clarke-Jacobian row selection."""
    first = as_vector(a, name="a")
    second = as_vector(b, first.shape[0], name="b")
    rows_a = as_matrix(Ja, name="Ja")
    rows_b = as_matrix(Jb, rows_a.shape, name="Jb")
    if rows_a.shape[0] != first.shape[0]:
        raise ShapeMismatch(f"Ja has {rows_a.shape[0]} rows for {first.shape[0]} components")

    if rule is BranchRule.FIRST_ARGUMENT:
        take_first = first <= second
    else:
        take_first = first < second
    value = np.where(take_first, first, second)
    jac = np.where(take_first[:, None], rows_a, rows_b)
    return value, jac


def smooth_problem(
    residual: ResidualMap,
    analytic_jacobian: DifferentialMap,
    m: int,
    n: int,
    name: str,
    known_zero=None,
    distance: Optional[Callable[[np.ndarray], float]] = None,
    parameters: Optional[Mapping[str, np.ndarray]] = None,
) -> Problem:
    """Problem whose Newton differential is the analytic Jacobian {∇G(x)}."""
    return Problem(
        name=name,
        m=m,
        n=n,
        residual_map=residual,
        differential_map=analytic_jacobian,
        known_zero=known_zero,
        smooth=True,
        distance=distance,
        parameters=parameters or {},
    )


def finite_difference_problem(problem: Problem) -> Problem:
    """Copy of ``problem`` whose differential is the central-difference Jacobian."""
    residual_map = problem.residual_map
    n = problem.n

    def differential(x: np.ndarray) -> np.ndarray:
        return fd_jacobian(residual_map, x, n)

    return replace(problem, name=f"{problem.name}-fd", differential_map=differential)
