"""Verification suites behind ``under-newton verify``.

Each check returns a ``CheckResult``; a suite passes when all of its checks
do. Instances are drawn from fixed seeds, so a suite's verdict is
reproducible.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from under_newton.diagnostics import (
    certify_zero,
    estimate_order,
    nd_residual,
    nd_scan,
    nd_threshold,
)
from under_newton.errors import InsufficientData, RankDeficient, UnderNewtonError
from under_newton.linalg import apply_pinv, materialize_pinv, project_affine
from under_newton.logging import TimingContext, with_context
from under_newton.metrics import metrics
from under_newton.model import Problem, smooth_problem
from under_newton.problems import (
    SMOOTH_BENCHMARKS,
    BenchmarkId,
    Rng64,
    build,
    lcp_strict_zero,
    lcp_toy,
    p1_distance,
)
from under_newton.schema import SolveConfig, SolveStatus, StepRule
from under_newton.solver import distance_series, newton_step, solve

logger = logging.getLogger("under_newton.verification")

RATE_FLOOR = 1e-13
# usable iterates kept by the order fit
RATE_TAIL = 3
SUPERLINEAR_ORDER = 1.8
SIGMOID_SEEDS = (1, 2, 3, 4, 5)
LCP_SEEDS = (1, 2, 3, 4, 5)
LCP_SIZES = (10, 50)
LCP_SUCCESS_RATE = 0.8


class VerifySuite(str, Enum):
    """Suites selectable from the CLI."""
    LINALG = "linalg"
    ND = "nd"
    RATES = "rates"
    ALL = "all"


@dataclass
class CheckResult:
    """Verdict of one named check."""
    name: str
    passed: bool
    detail: str = ""


def kkt_projection(x, H, b) -> np.ndarray:
    """Projection onto {y : Hy = b} via dense LU of [[I, Hᵀ], [H, 0]]·(y, λ) = (x, b)."""
    H = np.asarray(H, dtype=np.float64)
    n, m = H.shape
    saddle = np.zeros((m + n, m + n))
    saddle[:m, :m] = np.eye(m)
    saddle[:m, m:] = H.T
    saddle[m:, :m] = H
    rhs = np.concatenate([np.asarray(x, dtype=np.float64), np.asarray(b, dtype=np.float64)])
    return lu_solve(lu_factor(saddle), rhs)[:m]


def random_wide_matrix(rng: Rng64, max_rows: int, max_cols: int) -> np.ndarray:
    """n×m standard normal matrix with n in 1..max_rows and m in n+1..max_cols."""
    n = 1 + rng.next_u64() % max_rows
    m = n + 1 + rng.next_u64() % (max_cols - n)
    return rng.normal_matrix(n, m)


def _frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "fro"))


def _verdict(name: str, failures: List[str], total: int) -> CheckResult:
    if failures:
        return CheckResult(name, False, f"{len(failures)}/{total} failed; first: {failures[0]}")
    return CheckResult(name, True, f"{total} cases")


class VerificationRunner:
    """Runs verification suites and aggregates their checks."""

    def __init__(self, seed: int = 20240601):
        self.seed = seed
        self.suites: Dict[VerifySuite, List[Callable[[], CheckResult]]] = {
            VerifySuite.LINALG: [
                self.check_moore_penrose,
                self.check_projection_oracle,
                self.check_newton_step_projection,
            ],
            VerifySuite.ND: [
                self.check_nd_smooth,
                self.check_nd_affine,
                self.check_nd_complementarity,
            ],
            VerifySuite.RATES: [
                self.check_order_calibration,
                self.check_superlinear,
                self.check_degenerate_p2,
                self.check_complementarity,
                self.check_rule_comparison,
            ],
        }

    def run(self, suite: VerifySuite) -> List[CheckResult]:
        """Run one suite (or all of them) and return results in a fixed order."""
        suite = VerifySuite(suite)
        if suite is VerifySuite.ALL:
            return self.run_all()
        # pool threads start from an empty context
        return with_context(benchmark=f"verify-{suite.value}")(self._run_suite)(suite)

    def _run_suite(self, suite: VerifySuite) -> List[CheckResult]:
        results = []
        with TimingContext(f"verify_{suite.value}", logger):
            for check in self.suites[suite]:
                try:
                    result = check()
                except UnderNewtonError as e:
                    result = CheckResult(check.__name__, False, f"{type(e).__name__}: {e}")
                metrics.track_check(suite.value, result.passed)
                results.append(result)
        return results

    def run_all(self) -> List[CheckResult]:
        """Run the suites concurrently; results are reduced in suite order."""
        suites = [s for s in VerifySuite if s is not VerifySuite.ALL]
        with ThreadPoolExecutor(max_workers=len(suites)) as pool:
            futures = [pool.submit(self.run, s) for s in suites]
            return [result for future in futures for result in future.result()]

    # linalg

    def check_moore_penrose(self, count: int = 500) -> CheckResult:
        """A A⁺ A = A, A⁺ A A⁺ = A⁺ and A A⁺ = I on seeded full-row-rank matrices."""
        rng = Rng64(self.seed)
        failures = []
        for case in range(count):
            A = random_wide_matrix(rng, 6, 10)
            P = materialize_pinv(A)
            identity_gap = _frobenius(A @ P - np.eye(A.shape[0]))
            if _frobenius(A @ P @ A - A) > 1e-10 * _frobenius(A):
                failures.append(f"case {case}: A A+ A != A")
            elif _frobenius(P @ A @ P - P) > 1e-10 * _frobenius(P):
                failures.append(f"case {case}: A+ A A+ != A+")
            elif identity_gap > 1e-10:
                failures.append(f"case {case}: A A+ - I = {identity_gap:.2e}")
        return _verdict("moore_penrose_identities", failures, count)

    def check_projection_oracle(self, count: int = 200) -> CheckResult:
        """project_affine vs the KKT oracle, plus feasibility, idempotence and the kernel lemma."""
        rng = Rng64(self.seed + 1)
        failures = []
        for case in range(count):
            H = random_wide_matrix(rng, 5, 8)
            n, m = H.shape
            x = rng.normals(m)
            b = rng.normals(n)
            y = project_affine(x, H, b)
            oracle = kkt_projection(x, H, b)
            offset = x - y
            if np.linalg.norm(y - oracle) > 1e-8 * max(1.0, np.linalg.norm(oracle)):
                failures.append(f"case {case}: differs from KKT oracle")
            elif np.linalg.norm(H @ y - b) > 1e-10 * (1.0 + np.linalg.norm(b)):
                failures.append(f"case {case}: projection is infeasible")
            elif np.linalg.norm(project_affine(y, H, b) - y) > 1e-10 * (1.0 + np.linalg.norm(y)):
                failures.append(f"case {case}: projection is not idempotent")
            elif np.linalg.norm(apply_pinv(H, H @ offset) - offset) > 1e-9 * (1.0 + np.linalg.norm(x)):
                # x − P(x) lies in range(Hᵀ), which H⁺H fixes
                failures.append(f"case {case}: H+ H does not fix x - P(x)")
        return _verdict("projection_oracle", failures, count)

    def check_newton_step_projection(self, points: int = 50) -> CheckResult:
        """ProjectCurrent step equals project_affine(x, H, Hx − G(x)) on every benchmark."""
        failures = []
        total = 0
        for benchmark in BenchmarkId:
            problem, x0 = build(benchmark, seed=self.seed)
            rng = Rng64(self.seed + 2)
            for point in range(points):
                x = x0 + 0.5 * rng.normals(problem.m)
                total += 1
                H = problem.differential(x)
                try:
                    step = newton_step(problem, x, StepRule.PROJECT_CURRENT)
                    target = project_affine(x, H, H @ x - problem.residual(x))
                except RankDeficient:
                    failures.append(f"{benchmark.value} point {point}: rank deficient")
                    continue
                if np.linalg.norm(step - target) > 1e-10 * (1.0 + np.linalg.norm(target)):
                    failures.append(f"{benchmark.value} point {point}: step differs from projection")
        return _verdict("newton_step_projection", failures, total)

    # nd

    def scan_anchor(self, benchmark: BenchmarkId) -> Tuple[Problem, np.ndarray]:
        """A benchmark together with a point of its zero set."""
        problem, x0 = build(benchmark, seed=self.seed)
        if problem.known_zero is not None:
            return problem, problem.known_zero
        return problem, certify_zero(problem, x0)

    def check_nd_smooth(self) -> CheckResult:
        """Smallest-radius quotient below threshold and below the largest-radius one."""
        failures = []
        for benchmark in SMOOTH_BENCHMARKS:
            problem, anchor = self.scan_anchor(benchmark)
            scan = nd_scan(problem, anchor, seed=self.seed)
            smallest, largest = scan.worst_ratio[-1], scan.worst_ratio[0]
            limit = nd_threshold(problem, anchor)
            if smallest > limit or smallest > largest:
                failures.append(
                    f"{benchmark.value}: ratio {smallest:.2e} at r={scan.radii[-1]:g} "
                    f"(limit {limit:.2e}, r={scan.radii[0]:g} gives {largest:.2e})"
                )
        return _verdict("nd_scan_smooth", failures, len(SMOOTH_BENCHMARKS))

    def check_nd_affine(self, count: int = 50) -> CheckResult:
        """The Newton quotient of an affine map vanishes to roundoff."""
        rng = Rng64(self.seed + 3)
        failures = []
        for case in range(count):
            H = random_wide_matrix(rng, 5, 8)
            n, m = H.shape
            b = rng.normals(n)
            problem = smooth_problem(lambda x, H=H, b=b: H @ x - b, lambda x, H=H: H, m=m, n=n, name="affine")
            ratio = nd_residual(problem, rng.normals(m), rng.normals(m))
            if ratio > 1e-12:
                failures.append(f"case {case}: ratio {ratio:.2e}")
        return _verdict("nd_affine", failures, count)

    def check_nd_complementarity(self) -> CheckResult:
        """At a strictly complementary zero the toy model is locally affine."""
        failures = []
        for seed in LCP_SEEDS:
            problem, _ = lcp_toy(10, seed)
            anchor = lcp_strict_zero(problem, seed)
            scan = nd_scan(problem, anchor, radii=(1e-2, 1e-4, 1e-6), seed=seed)
            if scan.worst_ratio[-1] > nd_threshold(problem, anchor):
                failures.append(f"seed {seed}: ratio {scan.worst_ratio[-1]:.2e}")
        return _verdict("nd_scan_complementarity", failures, len(LCP_SEEDS))

    # rates

    def check_order_calibration(self) -> CheckResult:
        """Synthetic sequences of order 1, 1.5 and 2 are recovered within 0.05."""
        failures = []
        sequences = {
            1.0: [0.5 ** k for k in range(30)],
            1.5: [0.5 ** (1.5 ** k) for k in range(12)],
            2.0: [0.5 ** (2 ** k) for k in range(7)],
        }
        for order, series in sequences.items():
            estimate = estimate_order(series, RATE_FLOOR)
            if abs(estimate.order - order) > 0.05:
                failures.append(f"order {order}: fitted {estimate.order:.3f}")
        return _verdict("order_calibration", failures, len(sequences))

    def superlinear_cases(self) -> List[Tuple[str, Problem, np.ndarray]]:
        cases = []
        for benchmark in (BenchmarkId.P1, BenchmarkId.P3, BenchmarkId.P3B, BenchmarkId.P4B):
            problem, x0 = build(benchmark, seed=self.seed)
            cases.append((benchmark.value, problem, x0))
        for seed in SIGMOID_SEEDS:
            problem, x0 = build(BenchmarkId.SIGMOID, seed=seed, dims=(20, 10))
            cases.append((f"sigmoid seed {seed}", problem, x0))
        return cases

    def check_superlinear(self) -> CheckResult:
        """Smooth benchmarks reach 1e-12 within 15 steps with fitted order ≥ 1.8."""
        cfg = SolveConfig(residual_tol=1e-12, max_iter=15)
        failures = []
        cases = self.superlinear_cases()
        for label, problem, x0 in cases:
            trace = solve(problem, x0, StepRule.PROJECT_CURRENT, cfg)
            if trace.status is not SolveStatus.RESIDUAL_CONVERGED:
                failures.append(f"{label}: {trace.status.value} at {trace.final_residual:.2e}")
                continue
            if problem.distance is p1_distance:
                failures.extend(self._p1_distance_failures(trace))
            try:
                order = estimate_order(trace.residual_norms, RATE_FLOOR, RATE_TAIL).order
            except InsufficientData:
                # converged before a tail formed; nothing to fit
                continue
            if order < SUPERLINEAR_ORDER:
                failures.append(f"{label}: order {order:.2f}")
        return _verdict("superlinear_convergence", failures, len(cases))

    def _p1_distance_failures(self, trace) -> List[str]:
        distances = distance_series(trace, p1_distance)
        if distances[-1] > 1e-8:
            return [f"p1: final distance {distances[-1]:.2e}"]
        try:
            ratios = estimate_order(distances, RATE_FLOOR).c_sequence[-3:]
        except InsufficientData:
            # too few distances above the floor to compare ratios
            return []
        if any(b >= a for a, b in zip(ratios, ratios[1:])):
            return [f"p1: distance ratios not decreasing: {ratios}"]
        return []

    def check_degenerate_p2(self) -> CheckResult:
        """P2 stalls: no superlinear tail, no 1e-12 residual, monotone start."""
        problem, x0 = build(BenchmarkId.P2)
        trace = solve(problem, x0, StepRule.PROJECT_CURRENT, SolveConfig(residual_tol=1e-12, max_iter=50))
        failures = []
        if trace.status not in (SolveStatus.MAX_ITERATIONS, SolveStatus.RANK_DEFICIENT_ABORT):
            failures.append(f"status {trace.status.value}")
        head = trace.residual_norms[:11]
        if any(b > a for a, b in zip(head, head[1:])):
            failures.append("residuals increase within the first 10 steps")
        try:
            order = estimate_order(trace.residual_norms, RATE_FLOOR, RATE_TAIL).order
            if order >= SUPERLINEAR_ORDER:
                failures.append(f"fitted order {order:.2f}")
        except InsufficientData:
            pass
        return _verdict("degenerate_p2", failures, 1)

    def check_complementarity(self, max_iter: int = 25) -> CheckResult:
        """The toy model reaches 1e-10 within 25 steps on at least 80% of seeds."""
        cfg = SolveConfig(residual_tol=1e-10, max_iter=max_iter)
        failures = []
        for n in LCP_SIZES:
            converged = 0
            for seed in LCP_SEEDS:
                problem, x0 = lcp_toy(n, seed)
                trace = solve(problem, x0, StepRule.PROJECT_CURRENT, cfg)
                if trace.status is SolveStatus.RESIDUAL_CONVERGED:
                    converged += 1
            rate = converged / len(LCP_SEEDS)
            if rate < LCP_SUCCESS_RATE:
                failures.append(f"n={n}: {converged}/{len(LCP_SEEDS)} converged")
        return _verdict("complementarity_toy", failures, len(LCP_SIZES))

    def check_rule_comparison(self) -> CheckResult:
        """Both step rules reach 1e-10 within 8 steps on sigmoid instances."""
        cfg = SolveConfig(residual_tol=1e-10, max_iter=8)
        failures = []
        for seed in SIGMOID_SEEDS:
            problem, x0 = build(BenchmarkId.SIGMOID, seed=seed, dims=(20, 10))
            for rule in StepRule:
                trace = solve(problem, x0, rule, cfg)
                if trace.status is not SolveStatus.RESIDUAL_CONVERGED:
                    failures.append(f"seed {seed} {rule.value}: {trace.status.value}")
        return _verdict("rule_comparison", failures, 2 * len(SIGMOID_SEEDS))


def all_passed(results: List[CheckResult]) -> bool:
    return all(result.passed for result in results)
