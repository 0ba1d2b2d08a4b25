"""Pydantic validation for solver settings and CLI run requests."""

from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from under_newton import config
from under_newton.problems.registry import BenchmarkId

MAX_SEED = 2 ** 64 - 1


class StepRule(str, Enum):
    """Update formula for the Newton-type step."""
    PROJECT_CURRENT = "project"
    POLYAK_TREMBA = "polyak"


class SolveStatus(str, Enum):
    """Why a solve stopped."""
    RESIDUAL_CONVERGED = "residual_converged"
    STEP_CONVERGED = "step_converged"
    MAX_ITERATIONS = "max_iterations"
    RANK_DEFICIENT_ABORT = "rank_deficient_abort"
    NON_FINITE_ABORT = "non_finite_abort"

    @property
    def converged(self) -> bool:
        return self in (SolveStatus.RESIDUAL_CONVERGED, SolveStatus.STEP_CONVERGED)


class SolveConfig(BaseModel):
    """Stopping rule and rank threshold for one solve."""
    model_config = ConfigDict(frozen=True)

    residual_tol: float = Field(default=config.SOLVER["residual_tol"], gt=0)
    step_tol: float = Field(default=config.SOLVER["step_tol"], gt=0)
    max_iter: int = Field(default=config.SOLVER["max_iter"], ge=1)
    pivot_tol: float = Field(default=config.SOLVER["pivot_tol"], gt=0)

    def with_overrides(self, **overrides) -> "SolveConfig":
        """Copy with the given non-None fields replaced (and re-validated)."""
        updates = {key: value for key, value in overrides.items() if value is not None}
        return SolveConfig(**{**self.model_dump(), **updates})


def parse_dims(text: str) -> Tuple[int, ...]:
    """Parse ``"20x10"`` into (20, 10) and ``"10"`` into (10,)."""
    parts = text.lower().split("x")
    try:
        dims = tuple(int(part) for part in parts)
    except ValueError:
        raise ValueError(f"Invalid dims: {text!r}. Use <m>x<n> or <n>.")
    if len(dims) not in (1, 2):
        raise ValueError(f"Invalid dims: {text!r}. Use <m>x<n> or <n>.")
    return dims


class RunSpec(BaseModel):
    """A validated request to run one benchmark."""
    benchmark: BenchmarkId
    rule: StepRule = StepRule.PROJECT_CURRENT
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    dims: Optional[Tuple[int, ...]] = None
    max_iter: Optional[int] = Field(default=None, ge=1)
    residual_tol: Optional[float] = Field(default=None, gt=0)
    step_tol: Optional[float] = Field(default=None, gt=0)
    pivot_tol: Optional[float] = Field(default=None, gt=0)
    output_dir: Path = Field(default_factory=lambda: Path(config.OUTPUT["dir"]))

    @field_validator('dims', mode='before')
    @classmethod
    def parse_dims_text(cls, v):
        """Accept the CLI's ``<m>x<n>`` / ``<n>`` spelling."""
        if isinstance(v, str):
            return parse_dims(v)
        return v

    @model_validator(mode='after')
    def check_dims(self) -> "RunSpec":
        """Dims are required for sized benchmarks and forbidden otherwise."""
        if self.benchmark is BenchmarkId.SIGMOID:
            if self.dims is None or len(self.dims) != 2:
                raise ValueError("sigmoid requires --dims <m>x<n>")
            m, n = self.dims
            if not 1 <= n < m:
                raise ValueError(f"sigmoid requires 1 <= n < m, got {m}x{n}")
        elif self.benchmark is BenchmarkId.LCP_TOY:
            if self.dims is None or len(self.dims) != 1:
                raise ValueError("lcp requires --dims <n>")
            if self.dims[0] < 1:
                raise ValueError("lcp requires n >= 1")
        elif self.dims is not None:
            raise ValueError(f"{self.benchmark.value} has fixed dimensions; drop --dims")
        return self

    def solve_config(self) -> SolveConfig:
        return SolveConfig().with_overrides(
            max_iter=self.max_iter,
            residual_tol=self.residual_tol,
            step_tol=self.step_tol,
            pivot_tol=self.pivot_tol,
        )
