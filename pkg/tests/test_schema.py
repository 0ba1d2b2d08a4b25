from pathlib import Path

import pytest
from pydantic import ValidationError

from under_newton.problems import BenchmarkId
from under_newton.schema import RunSpec, SolveConfig, SolveStatus, StepRule, parse_dims


def test_parse_dims():
    assert parse_dims("20x10") == (20, 10)
    assert parse_dims("10") == (10,)
    with pytest.raises(ValueError):
        parse_dims("20x")
    with pytest.raises(ValueError):
        parse_dims("1x2x3")


def test_run_spec_sigmoid():
    spec = RunSpec(benchmark="sigmoid", rule="polyak", seed=7, dims="20x10")
    assert spec.benchmark is BenchmarkId.SIGMOID
    assert spec.rule is StepRule.POLYAK_TREMBA
    assert spec.dims == (20, 10)


@pytest.mark.parametrize("fields", [
    {"benchmark": "sigmoid"},
    {"benchmark": "sigmoid", "dims": "10x10"},
    {"benchmark": "lcp", "dims": "4x2"},
    {"benchmark": "p1", "dims": "3"},
    {"benchmark": "p9"},
    {"benchmark": "p1", "rule": "newton"},
    {"benchmark": "p1", "seed": -1},
    {"benchmark": "p1", "seed": 2 ** 64},
    {"benchmark": "p1", "max_iter": 0},
])
def test_run_spec_rejects(fields):
    with pytest.raises(ValidationError):
        RunSpec(**fields)


def test_run_spec_accepts_max_seed():
    assert RunSpec(benchmark="p1", seed=2 ** 64 - 1).seed == 2 ** 64 - 1


def test_solve_config_overrides():
    spec = RunSpec(benchmark="p1", max_iter=7, residual_tol=1e-8, output_dir=Path("out"))
    cfg = spec.solve_config()
    assert cfg.max_iter == 7
    assert cfg.residual_tol == 1e-8
    assert cfg.step_tol == SolveConfig().step_tol


def test_solve_config_is_validated():
    with pytest.raises(ValidationError):
        SolveConfig(residual_tol=0.0)
    with pytest.raises(ValidationError):
        SolveConfig().with_overrides(pivot_tol=-1.0)


def test_status_converged_flag():
    assert SolveStatus.RESIDUAL_CONVERGED.converged
    assert SolveStatus.STEP_CONVERGED.converged
    assert not SolveStatus.RANK_DEFICIENT_ABORT.converged
