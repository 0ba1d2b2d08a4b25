"""Under-determined Newton-type iteration x⁺ = x − H⁺G(x).

Each step projects the current iterate (ProjectCurrent) or the origin
(PolyakTremba) onto the affine solution set of the linearization,
{y : G(x) + H(y − x) = 0}. There is no line search or damping.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from under_newton.errors import NonFiniteResidual, RankDeficient
from under_newton.linalg import DEFAULT_PIVOT_TOL, as_vector, gram_factorization
from under_newton.metrics import metrics
from under_newton.model import Problem
from under_newton.schema import SolveConfig, SolveStatus, StepRule

logger = logging.getLogger("under_newton.solver")

__all__ = [
    "SolveConfig",
    "SolveStatus",
    "SolveTrace",
    "StepRule",
    "distance_series",
    "newton_step",
    "solve",
]


@dataclass
class SolveTrace:
    """Every iterate of one solve with its residual and step norms."""
    problem: str
    rule: StepRule
    iterates: List[np.ndarray] = field(default_factory=list)
    residual_norms: List[float] = field(default_factory=list)
    step_norms: List[float] = field(default_factory=list)
    status: Optional[SolveStatus] = None
    dist_to_known_zero: Optional[List[float]] = None

    @property
    def iterations(self) -> int:
        """Number of Newton steps taken."""
        return len(self.step_norms)

    @property
    def final_point(self) -> np.ndarray:
        return self.iterates[-1]

    @property
    def final_residual(self) -> float:
        return self.residual_norms[-1]

    @property
    def converged(self) -> bool:
        return self.status is not None and self.status.converged

    def _record(self, x: np.ndarray, residual_norm: float, known_zero: Optional[np.ndarray]):
        x = x.copy()
        x.flags.writeable = False
        self.iterates.append(x)
        self.residual_norms.append(residual_norm)
        if known_zero is not None:
            self.dist_to_known_zero.append(float(np.linalg.norm(x - known_zero)))


def newton_step(
    problem: Problem,
    x,
    rule: StepRule = StepRule.PROJECT_CURRENT,
    pivot_tol: float = DEFAULT_PIVOT_TOL,
) -> np.ndarray:
    """One step of the chosen rule; raises RankDeficient if H(x) loses row rank."""
    point = as_vector(x, problem.m, name="x")
    residual = problem.residual(point)
    factor, _ = gram_factorization(problem.differential(point), pivot_tol)
    correction = factor.apply_pinv(residual)
    if rule is StepRule.PROJECT_CURRENT:
        return point - correction
    # −H⁺(G(x) − Hx): the minimum-norm point of the same affine set
    return factor.apply_pinv(factor.H @ point) - correction


def solve(
    problem: Problem,
    x0,
    rule: StepRule = StepRule.PROJECT_CURRENT,
    config: Optional[SolveConfig] = None,
) -> SolveTrace:
    """Iterate until a stopping condition; failures become statuses, never exceptions."""
    cfg = config or SolveConfig()
    rule = StepRule(rule)
    known_zero = problem.known_zero
    trace = SolveTrace(
        problem=problem.name,
        rule=rule,
        dist_to_known_zero=[] if known_zero is not None else None,
    )
    started = time.perf_counter()

    x = as_vector(x0, problem.m, name="x0")
    try:
        trace._record(x, float(np.linalg.norm(problem.residual(x))), known_zero)
    except NonFiniteResidual:
        trace.status = SolveStatus.NON_FINITE_ABORT
        return _finish(trace, started)

    while trace.status is None:
        if trace.final_residual <= cfg.residual_tol:
            trace.status = SolveStatus.RESIDUAL_CONVERGED
            break
        if trace.iterations >= cfg.max_iter:
            trace.status = SolveStatus.MAX_ITERATIONS
            break
        try:
            x_next = newton_step(problem, x, rule, cfg.pivot_tol)
            residual_norm = float(np.linalg.norm(problem.residual(x_next)))
        except RankDeficient as exc:
            logger.warning(
                f"Rank-deficient differential at step {trace.iterations}",
                extra={
                    "k": trace.iterations,
                    "effective_rank": exc.report.effective_rank,
                    "smallest_pivot": exc.report.smallest_pivot,
                }
            )
            trace.status = SolveStatus.RANK_DEFICIENT_ABORT
            break
        except NonFiniteResidual:
            logger.warning(f"Non-finite residual after step {trace.iterations}", extra={"k": trace.iterations})
            trace.status = SolveStatus.NON_FINITE_ABORT
            break

        step_norm = float(np.linalg.norm(x_next - x))
        trace.step_norms.append(step_norm)
        trace._record(x_next, residual_norm, known_zero)
        x = x_next
        logger.debug(
            f"Step {trace.iterations}",
            extra={"k": trace.iterations, "residual": residual_norm, "step_norm": step_norm}
        )

        if residual_norm <= cfg.residual_tol:
            trace.status = SolveStatus.RESIDUAL_CONVERGED
        elif step_norm <= cfg.step_tol:
            trace.status = SolveStatus.STEP_CONVERGED

    return _finish(trace, started)


def _finish(trace: SolveTrace, started: float) -> SolveTrace:
    duration = time.perf_counter() - started
    logger.info(
        f"Solve finished: {trace.status.value}",
        extra={
            "problem": trace.problem,
            "status": trace.status.value,
            "iterations": trace.iterations,
            "final_residual": trace.final_residual if trace.residual_norms else None,
            "duration_ms": duration * 1000,
        }
    )
    metrics.track_solve(trace.problem, trace.rule.value, trace.status.value, trace.iterations, duration)
    return trace


def distance_series(trace: SolveTrace, zero_oracle: Callable[[np.ndarray], float]) -> List[float]:
    """dist(x^k, 𝒵) for every recorded iterate."""
    return [float(zero_oracle(x)) for x in trace.iterates]
