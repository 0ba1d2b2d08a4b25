"""CSV trace files.

Floats are written in scientific notation with 17 significant digits
(``.16e``), rows end in LF, and a missing value (no step after the last
iterate, or a series that stopped early) is an empty cell.
"""

import csv
from pathlib import Path
from typing import List, Mapping, Optional, Sequence

from under_newton.solver import SolveTrace

TRACE_HEADER = ["k", "residual", "step_norm"]


def format_float(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(value, ".16e")


def _write(path: Path, header: List[str], rows: List[List[str]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _at(values: Sequence[float], k: int) -> Optional[float]:
    return values[k] if k < len(values) else None


def write_trace_csv(path: Path, trace: SolveTrace) -> Path:
    """One row per iterate: k, ‖G(x^k)‖, ‖x^{k+1} − x^k‖."""
    rows = [
        [str(k), format_float(residual), format_float(_at(trace.step_norms, k))]
        for k, residual in enumerate(trace.residual_norms)
    ]
    return _write(path, TRACE_HEADER, rows)


def write_series_csv(path: Path, series: Mapping[str, Sequence[float]]) -> Path:
    """Columns ``k`` plus one per series, padded to the longest series."""
    length = max((len(values) for values in series.values()), default=0)
    rows = [
        [str(k)] + [format_float(_at(values, k)) for values in series.values()]
        for k in range(length)
    ]
    return _write(path, ["k", *series], rows)


def write_comparison_csv(path: Path, project: SolveTrace, polyak: SolveTrace) -> Path:
    """Residual series of both step rules side by side."""
    return write_series_csv(
        path,
        {"residual_project": project.residual_norms, "residual_polyak": polyak.residual_norms},
    )
