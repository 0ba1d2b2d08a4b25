"""Prometheus metrics for solver runs."""

import platform
import sys
from pathlib import Path

from prometheus_client import CollectorRegistry, Counter, Histogram, Info, write_to_textfile

from under_newton import __version__


# Private registry so library users never pollute the global default one
REGISTRY = CollectorRegistry()

SYSTEM_INFO = Info(
    'under_newton_info',
    'Solver package information',
    registry=REGISTRY
)

SOLVES_TOTAL = Counter(
    'under_newton_solves_total',
    'Total solves by outcome',
    ['problem', 'rule', 'status'],
    registry=REGISTRY
)

SOLVE_ITERATIONS = Histogram(
    'under_newton_solve_iterations',
    'Newton steps taken per solve',
    ['problem', 'rule'],
    buckets=[1, 2, 3, 4, 5, 6, 8, 10, 15, 25, 50, 100],
    registry=REGISTRY
)

SOLVE_DURATION = Histogram(
    'under_newton_solve_duration_seconds',
    'Wall time per solve in seconds',
    ['problem', 'rule'],
    buckets=[0.0001, 0.0005, 0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0],
    registry=REGISTRY
)

RANK_DEFICIENT_TOTAL = Counter(
    'under_newton_rank_deficient_total',
    'Solves aborted on a rank-deficient differential',
    ['problem'],
    registry=REGISTRY
)

VERIFY_CHECKS_TOTAL = Counter(
    'under_newton_verify_checks_total',
    'Verification checks by suite and result',
    ['suite', 'result'],
    registry=REGISTRY
)


class MetricsCollector:
    """Metrics collection and export."""

    def __init__(self):
        self.registry = REGISTRY
        SYSTEM_INFO.info({
            'version': __version__,
            'python_version': sys.version.split()[0],
            'platform': platform.system(),
        })

    def track_solve(self, problem: str, rule: str, status: str,
                    iterations: int, duration: float):
        """Track the outcome of one solve."""
        SOLVES_TOTAL.labels(problem=problem, rule=rule, status=status).inc()
        SOLVE_ITERATIONS.labels(problem=problem, rule=rule).observe(iterations)
        SOLVE_DURATION.labels(problem=problem, rule=rule).observe(duration)
        if status == 'rank_deficient_abort':
            RANK_DEFICIENT_TOTAL.labels(problem=problem).inc()

    def track_check(self, suite: str, passed: bool):
        """Track one verification check."""
        VERIFY_CHECKS_TOTAL.labels(suite=suite, result='pass' if passed else 'fail').inc()

    def export(self, path: Path) -> None:
        """Write the registry in Prometheus text format."""
        path.parent.mkdir(parents=True, exist_ok=True)
        write_to_textfile(str(path), self.registry)


metrics = MetricsCollector()
