"""Command-line entry point: ``under-newton run|compare|sweep|verify|list``."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from under_newton import config
from under_newton.diagnostics import estimate_order
from under_newton.errors import InsufficientData, UnderNewtonError, UsageError
from under_newton.logging import TimingContext, generate_run_id, set_run_context, setup_logging
from under_newton.metrics import metrics
from under_newton.problems import BenchmarkId, build, describe
from under_newton.report import format_float, write_comparison_csv, write_series_csv, write_trace_csv
from under_newton.schema import RunSpec, SolveStatus, StepRule
from under_newton.solver import SolveTrace, solve
from under_newton.ui.plot import write_convergence_svg
from under_newton.verification import VerificationRunner, VerifySuite, all_passed

logger = logging.getLogger("under_newton.cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_STALLED = 2
EXIT_RANK_DEFICIENT = 3

STATUS_EXIT_CODES = {
    SolveStatus.RESIDUAL_CONVERGED: EXIT_OK,
    SolveStatus.STEP_CONVERGED: EXIT_OK,
    SolveStatus.MAX_ITERATIONS: EXIT_STALLED,
    SolveStatus.NON_FINITE_ABORT: EXIT_STALLED,
    SolveStatus.RANK_DEFICIENT_ABORT: EXIT_RANK_DEFICIENT,
}

POLYNOMIAL_BENCHMARKS = (
    BenchmarkId.P1,
    BenchmarkId.P2,
    BenchmarkId.P3,
    BenchmarkId.P3B,
    BenchmarkId.P4,
    BenchmarkId.P4B,
)


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors raised instead of ``sys.exit(2)``."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--log-level",
        type=str.upper,
        default=config.LOGGING["level"].upper(),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level for stderr",
    )
    common.add_argument("--log-file", type=Path, default=None, help="Also write JSON logs to this file")
    common.add_argument("--metrics-out", type=Path, default=None, help="Write Prometheus metrics to this file")

    problem = argparse.ArgumentParser(add_help=False)
    problem.add_argument("--benchmark", required=True, choices=[b.value for b in BenchmarkId])
    problem.add_argument("--dims", default=None, help="<m>x<n> for sigmoid, <n> for lcp")

    tuning = argparse.ArgumentParser(add_help=False)
    tuning.add_argument("--seed", type=int, default=0, help="Unsigned 64-bit seed")
    tuning.add_argument("--max-iter", type=int, default=None)
    tuning.add_argument("--residual-tol", type=float, default=None)
    tuning.add_argument("--step-tol", type=float, default=None)
    tuning.add_argument("--pivot-tol", type=float, default=None)
    tuning.add_argument("--out", type=Path, default=Path(config.OUTPUT["dir"]), help="Output directory")

    parser = ArgumentParser(prog="under-newton", description="Projection Newton solver for under-determined systems")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    run = sub.add_parser("run", parents=[common, problem, tuning], help="Solve one benchmark")
    run.add_argument("--rule", default=StepRule.PROJECT_CURRENT.value, choices=[r.value for r in StepRule])

    sub.add_parser("compare", parents=[common, problem, tuning], help="Solve one benchmark with both step rules")

    sweep = sub.add_parser("sweep", parents=[common, tuning], help="Solve every polynomial benchmark with one rule")
    sweep.add_argument("--rule", default=StepRule.PROJECT_CURRENT.value, choices=[r.value for r in StepRule])

    verify = sub.add_parser("verify", parents=[common], help="Run verification suites")
    verify.add_argument("suite", choices=[s.value for s in VerifySuite])

    sub.add_parser("list", parents=[common], help="List benchmarks and their dimensions")
    return parser


def _run_spec(args: argparse.Namespace, rule: StepRule, benchmark: Optional[str] = None) -> RunSpec:
    return RunSpec(
        benchmark=benchmark or args.benchmark,
        rule=rule,
        seed=args.seed,
        dims=getattr(args, "dims", None),
        max_iter=args.max_iter,
        residual_tol=args.residual_tol,
        step_tol=args.step_tol,
        pivot_tol=args.pivot_tol,
        output_dir=args.out,
    )


def _fitted_order(trace: SolveTrace) -> str:
    try:
        estimate = estimate_order(trace.residual_norms, tail=config.DIAGNOSTICS["rate_tail"])
    except InsufficientData:
        return "n/a"
    return f"{estimate.order:.3f}"


def _summary(label: str, trace: SolveTrace) -> None:
    print(f"{label}status: {trace.status.value}")
    print(f"{label}iterations: {trace.iterations}")
    print(f"{label}final_residual: {format_float(trace.final_residual)}")
    print(f"{label}order: {_fitted_order(trace)}")


def cmd_run(args: argparse.Namespace) -> int:
    spec = _run_spec(args, StepRule(args.rule))
    set_run_context(generate_run_id(), spec.benchmark.value, spec.rule.value, str(spec.seed))
    problem, x0 = build(spec.benchmark, spec.seed, spec.dims)
    trace = solve(problem, x0, spec.rule, spec.solve_config())

    stem = f"{spec.benchmark.value}_{spec.rule.value}_{spec.seed}"
    csv_path = write_trace_csv(spec.output_dir / f"{stem}.csv", trace)
    write_convergence_svg(
        spec.output_dir / f"{stem}.svg",
        {spec.rule.value: trace.residual_norms},
        f"{problem.name} ({spec.rule.value}, seed {spec.seed})",
    )
    logger.info(f"Wrote {csv_path}", extra={"rows": len(trace.residual_norms)})
    _summary("", trace)
    return STATUS_EXIT_CODES[trace.status]


def cmd_compare(args: argparse.Namespace) -> int:
    spec = _run_spec(args, StepRule.PROJECT_CURRENT)
    set_run_context(generate_run_id(), spec.benchmark.value, "compare", str(spec.seed))
    problem, x0 = build(spec.benchmark, spec.seed, spec.dims)
    cfg = spec.solve_config()
    traces = {rule: solve(problem, x0, rule, cfg) for rule in StepRule}
    project = traces[StepRule.PROJECT_CURRENT]
    polyak = traces[StepRule.POLYAK_TREMBA]

    stem = f"{spec.benchmark.value}_compare_{spec.seed}"
    write_comparison_csv(spec.output_dir / f"{stem}.csv", project, polyak)
    write_convergence_svg(
        spec.output_dir / f"{stem}.svg",
        {rule.value: trace.residual_norms for rule, trace in traces.items()},
        f"{problem.name} (seed {spec.seed})",
    )
    for rule, trace in traces.items():
        _summary(f"{rule.value} ", trace)
    return max(STATUS_EXIT_CODES[trace.status] for trace in traces.values())


def cmd_sweep(args: argparse.Namespace) -> int:
    """Residual histories of P1–P4b under one rule, in one CSV and one plot.

    Solver outcomes are reported, not turned into exit codes.
    """
    rule = StepRule(args.rule)
    specs = [_run_spec(args, rule, benchmark.value) for benchmark in POLYNOMIAL_BENCHMARKS]
    set_run_context(generate_run_id(), "polynomial", rule.value, str(args.seed))
    traces = {}
    for spec in specs:
        problem, x0 = build(spec.benchmark, spec.seed)
        traces[spec.benchmark.value] = solve(problem, x0, rule, spec.solve_config())

    out = specs[0].output_dir
    stem = f"polynomial_{rule.value}_{args.seed}"
    series = {name: trace.residual_norms for name, trace in traces.items()}
    write_series_csv(out / f"{stem}.csv", series)
    write_convergence_svg(out / f"{stem}.svg", series, f"polynomial systems ({rule.value}, seed {args.seed})")
    for name, trace in traces.items():
        _summary(f"{name} ", trace)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    suite = VerifySuite(args.suite)
    set_run_context(generate_run_id(), benchmark=f"verify-{suite.value}")
    with TimingContext(f"verify {suite.value}", logger):
        results = VerificationRunner().run(suite)
    for result in results:
        verdict = "PASS" if result.passed else "FAIL"
        print(f"{verdict} {result.name}: {result.detail}")
    return EXIT_OK if all_passed(results) else EXIT_STALLED


def cmd_list(args: argparse.Namespace) -> int:
    for benchmark, m, n in describe():
        print(f"{benchmark} {m} {n}")
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "list": cmd_list,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
        setup_logging("under_newton", args.log_level, args.log_file or _default_log_file())
        code = COMMANDS[args.command](args)
        if args.metrics_out:
            metrics.export(args.metrics_out)
    except (UsageError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UnderNewtonError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: cannot write {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_USAGE

    return code


def _default_log_file() -> Optional[Path]:
    return Path(config.LOGGING["file"]) if config.LOGGING["file"] else None


if __name__ == "__main__":
    sys.exit(main())
