"""Empirical checks of Newton differentiability and convergence order."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from under_newton import config
from under_newton.errors import InsufficientData, NotAZero, ZeroSeparation
from under_newton.linalg import as_vector
from under_newton.logging import timed_operation
from under_newton.model import Problem
from under_newton.problems.rng import Rng64
from under_newton.schema import SolveConfig, StepRule
from under_newton.solver import solve

logger = logging.getLogger("under_newton.diagnostics")

ZERO_TOL = 1e-10
MIN_SEPARATION = 1e-15
DEFAULT_RADII = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
ND_RATIO_TOL = 1e-4


@dataclass
class RateEstimate:
    """Fitted q in s_{k+1} ≈ C·s_k^q and the per-step ratios behind it."""
    order: float
    c_sequence: List[float] = field(default_factory=list)
    points_used: int = 0


@dataclass
class NdScan:
    """Worst Newton quotient over sampled directions, per radius."""
    radii: List[float]
    worst_ratio: List[float]


def nd_residual(problem: Problem, x, xbar) -> float:
    """‖G(x) − G(x̄) − H(x)(x − x̄)‖ / ‖x − x̄‖, with H taken at x."""
    point = as_vector(x, problem.m, name="x")
    anchor = as_vector(xbar, problem.m, name="xbar")
    delta = point - anchor
    separation = float(np.linalg.norm(delta))
    if separation < MIN_SEPARATION:
        raise ZeroSeparation(f"x and xbar are {separation:.3e} apart", separation)
    remainder = problem.residual(point) - problem.residual(anchor) - problem.differential(point) @ delta
    return float(np.linalg.norm(remainder)) / separation


def nd_scan(
    problem: Problem,
    xbar,
    directions: Optional[int] = None,
    radii: Sequence[float] = DEFAULT_RADII,
    seed: int = 0,
) -> NdScan:
    """Max of nd_residual over seeded unit directions on each sphere around x̄.

    The same directions are reused at every radius.
    """
    anchor = as_vector(xbar, problem.m, name="xbar")
    residual_norm = float(np.linalg.norm(problem.residual(anchor)))
    if residual_norm > ZERO_TOL:
        raise NotAZero(f"{problem.name}: scan anchor has residual {residual_norm:.3e}", residual_norm)
    radii = [float(r) for r in radii]
    if not radii or any(r <= 0 for r in radii) or any(b >= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be positive and strictly decreasing")

    count = config.DIAGNOSTICS["nd_directions"] if directions is None else int(directions)
    if count < 1:
        raise ValueError(f"directions must be at least 1, got {count}")
    unit = Rng64(seed).unit_vectors(count, problem.m)
    worst = [
        max(nd_residual(problem, anchor + r * d, anchor) for d in unit)
        for r in radii
    ]
    return NdScan(radii=radii, worst_ratio=worst)


def nd_threshold(problem: Problem, xbar) -> float:
    """Acceptance bound for the smallest-radius quotient, scaled by ‖H(x̄)‖_F."""
    return ND_RATIO_TOL * (1.0 + float(np.linalg.norm(problem.differential(xbar))))


def estimate_order(series: Sequence[float], floor: Optional[float] = None, tail: Optional[int] = None) -> RateEstimate:
    """Least-squares slope of log s_{k+1} against log s_k.

    Only consecutive pairs with both values above ``floor`` are used. With
    ``tail`` set, the fit keeps the last ``tail`` usable iterates, that is
    the last ``tail - 1`` pairs.
    """
    floor = config.DIAGNOSTICS["rate_floor"] if floor is None else floor
    values = [float(s) for s in series]
    pairs = [(a, b) for a, b in zip(values, values[1:]) if a > floor and b > floor]
    if tail is not None:
        if tail < 3:
            raise ValueError(f"tail must cover at least 3 iterates, got {tail}")
        pairs = pairs[-(tail - 1):]
    if len(pairs) < 2:
        raise InsufficientData(f"need 2 usable pairs above {floor:g}, have {len(pairs)}", len(pairs))

    logs = np.log(np.array(pairs))
    if np.ptp(logs[:, 0]) == 0.0:
        raise InsufficientData("usable pairs have identical abscissae", len(pairs))
    slope, _ = np.polyfit(logs[:, 0], logs[:, 1], 1)
    return RateEstimate(
        order=float(slope),
        c_sequence=[b / a for a, b in pairs],
        points_used=len(pairs),
    )


@timed_operation("certify_zero")
def certify_zero(problem: Problem, x0, solve_config: Optional[SolveConfig] = None) -> np.ndarray:
    """Solve from x0 and return the final iterate if it is a zero to 1e-10."""
    trace = solve(problem, x0, StepRule.PROJECT_CURRENT, solve_config)
    if not trace.residual_norms or trace.final_residual > ZERO_TOL:
        residual = trace.final_residual if trace.residual_norms else float("inf")
        raise NotAZero(
            f"{problem.name}: solve ended {trace.status.value} at residual {residual:.3e}",
            residual
        )
    logger.debug(f"Certified zero of {problem.name}", extra={"iterations": trace.iterations})
    return np.array(trace.final_point)
