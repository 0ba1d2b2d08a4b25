"""Benchmark registry: ids, constructors, starting points."""

from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from under_newton.errors import ShapeMismatch
from under_newton.model import Problem
import under_newton.problems.polynomial as polynomial
from under_newton.problems.lcp import lcp_toy
from under_newton.problems.rng import Rng64
from under_newton.problems.sigmoid import sigmoid_problem

SIGMOID_DEFAULT_DIMS = (20, 10)
LCP_DEFAULT_N = 10

P3_START_RADIUS = 0.3
P4_START_SCALE = 0.5


class BenchmarkId(str, Enum):
    """Benchmark identifiers, also used as CLI tokens."""
    SIGMOID = "sigmoid"
    P1 = "p1"
    P2 = "p2"
    P3 = "p3"
    P3B = "p3b"
    P4 = "p4"
    P4B = "p4b"
    LCP_TOY = "lcp"

    @property
    def sized(self) -> bool:
        """Whether the benchmark takes dimensions."""
        return self in (BenchmarkId.SIGMOID, BenchmarkId.LCP_TOY)


def _p3_start(seed: int) -> np.ndarray:
    base = np.array([1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0])
    direction = Rng64(seed).normals(8)
    return base + P3_START_RADIUS * direction / np.linalg.norm(direction)


def _normal_start(m: int) -> Callable[[int], np.ndarray]:
    def start(seed: int) -> np.ndarray:
        return P4_START_SCALE * Rng64(seed).normals(m)
    return start


class BenchmarkRegistry:
    """Registry of fixed-size benchmarks and their starting points."""

    def __init__(self):
        self.fixed: Dict[BenchmarkId, Callable[[], Problem]] = {
            BenchmarkId.P1: polynomial.p1,
            BenchmarkId.P2: polynomial.p2,
            BenchmarkId.P3: polynomial.p3,
            BenchmarkId.P3B: polynomial.p3b,
            BenchmarkId.P4: polynomial.p4,
            BenchmarkId.P4B: polynomial.p4b,
        }
        self.starts: Dict[BenchmarkId, Callable[[int], np.ndarray]] = {
            BenchmarkId.P1: lambda seed: np.array([3.0, 4.0]),
            BenchmarkId.P2: lambda seed: np.array([1.0, 1.0, 1.0]),
            BenchmarkId.P3: _p3_start,
            BenchmarkId.P3B: _p3_start,
            BenchmarkId.P4: _normal_start(8),
            BenchmarkId.P4B: _normal_start(6),
        }

    def build(
        self, benchmark: BenchmarkId, seed: int = 0, dims: Optional[Sequence[int]] = None
    ) -> Tuple[Problem, np.ndarray]:
        """Return (problem, default start) for a benchmark."""
        benchmark = BenchmarkId(benchmark)
        if benchmark is BenchmarkId.SIGMOID:
            m, n = _dims(benchmark, dims, SIGMOID_DEFAULT_DIMS)
            return sigmoid_problem(m, n, seed)
        if benchmark is BenchmarkId.LCP_TOY:
            (n,) = _dims(benchmark, dims, (LCP_DEFAULT_N,))
            return lcp_toy(n, seed)
        if dims is not None:
            raise ShapeMismatch(f"{benchmark.value} has fixed dimensions")
        return self.fixed[benchmark](), self.starts[benchmark](seed)

    def default_start(
        self, benchmark: BenchmarkId, seed: int = 0, dims: Optional[Sequence[int]] = None
    ) -> np.ndarray:
        """Deterministic starting point for (benchmark, seed)."""
        benchmark = BenchmarkId(benchmark)
        if benchmark.sized:
            return self.build(benchmark, seed, dims)[1]
        return self.starts[benchmark](seed)

    def describe(self) -> List[Tuple[str, int, int]]:
        """(id, m, n) for every benchmark; sized ones at their default dims."""
        rows = []
        for benchmark in BenchmarkId:
            problem, _ = self.build(benchmark, seed=0)
            rows.append((benchmark.value, problem.m, problem.n))
        return rows


def _dims(benchmark: BenchmarkId, dims: Optional[Sequence[int]], default: Tuple[int, ...]) -> Tuple[int, ...]:
    if dims is None:
        return default
    dims = tuple(int(d) for d in dims)
    if len(dims) != len(default):
        raise ShapeMismatch(f"{benchmark.value} takes {len(default)} dimension(s), got {len(dims)}")
    return dims


registry = BenchmarkRegistry()


def build(benchmark: BenchmarkId, seed: int = 0, dims: Optional[Sequence[int]] = None) -> Tuple[Problem, np.ndarray]:
    return registry.build(benchmark, seed, dims)


def default_start(benchmark: BenchmarkId, seed: int = 0, dims: Optional[Sequence[int]] = None) -> np.ndarray:
    return registry.default_start(benchmark, seed, dims)


def describe() -> List[Tuple[str, int, int]]:
    return registry.describe()
