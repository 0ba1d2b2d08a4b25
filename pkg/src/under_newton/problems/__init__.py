"""Benchmark corpus: sigmoid system, polynomial systems P1–P4b, complementarity toy."""

from under_newton.problems.lcp import lcp_from_data, lcp_strict_zero, lcp_toy
from under_newton.problems.polynomial import p1, p1_distance, p2, p3, p3b, p4, p4b
from under_newton.problems.registry import (
    BenchmarkId,
    BenchmarkRegistry,
    build,
    default_start,
    describe,
    registry,
)
from under_newton.problems.rng import Rng64
from under_newton.problems.sigmoid import phi, phi_prime, sigmoid_problem

SMOOTH_BENCHMARKS = (
    BenchmarkId.SIGMOID,
    BenchmarkId.P1,
    BenchmarkId.P2,
    BenchmarkId.P3,
    BenchmarkId.P3B,
    BenchmarkId.P4,
    BenchmarkId.P4B,
)

__all__ = [
    "BenchmarkId",
    "BenchmarkRegistry",
    "Rng64",
    "SMOOTH_BENCHMARKS",
    "build",
    "default_start",
    "describe",
    "lcp_from_data",
    "lcp_strict_zero",
    "lcp_toy",
    "p1",
    "p1_distance",
    "p2",
    "p3",
    "p3b",
    "p4",
    "p4b",
    "phi",
    "phi_prime",
    "registry",
    "sigmoid_problem",
]
