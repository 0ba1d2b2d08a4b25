"""Log-scale convergence plots rendered from a Jinja2 SVG template."""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Mapping, Optional, Sequence

from jinja2 import Environment, FileSystemLoader, select_autoescape

templates_dir = Path(__file__).parent / "templates"

_env = Environment(
    loader=FileSystemLoader(str(templates_dir)),
    autoescape=select_autoescape(enabled_extensions=("svg", "j2"), default_for_string=True),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)

WIDTH = 640
HEIGHT = 400
MARGIN_LEFT = 70
MARGIN_RIGHT = 150
MARGIN_TOP = 40
MARGIN_BOTTOM = 50
VALUE_FLOOR = 1e-17
PALETTE = ("#009bfa", "#e36f47", "#3ea44e", "#c271d2")


@dataclass
class Tick:
    position: str
    label: str


@dataclass
class Series:
    name: str
    color: str
    points: str


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _log10(value: Optional[float]) -> float:
    return math.log10(max(value, VALUE_FLOOR))


def render_convergence_svg(
    series: Mapping[str, Sequence[Optional[float]]],
    title: str,
    ylabel: str = "‖G(x^k)‖",
) -> str:
    """SVG line plot of each named series against k on a log₁₀ axis.

    ``None`` entries (a series that stopped early) are skipped.
    """
    logs = {
        name: [(k, _log10(v)) for k, v in enumerate(values) if v is not None]
        for name, values in series.items()
    }
    all_points = [p for points in logs.values() for p in points]
    k_max = max((k for k, _ in all_points), default=1) or 1
    y_lo = math.floor(min((y for _, y in all_points), default=0.0))
    y_hi = math.ceil(max((y for _, y in all_points), default=1.0))
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1, y_hi + 1

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(k: float) -> float:
        return MARGIN_LEFT + plot_w * k / k_max

    def sy(y: float) -> float:
        return MARGIN_TOP + plot_h * (y_hi - y) / (y_hi - y_lo)

    y_step = max(1, math.ceil((y_hi - y_lo) / 8))
    y_ticks = [Tick(_fmt(sy(e)), f"1e{e}") for e in range(y_lo, y_hi + 1, y_step)]
    x_step = max(1, math.ceil(k_max / 10))
    x_ticks = [Tick(_fmt(sx(k)), str(k)) for k in range(0, k_max + 1, x_step)]

    lines: List[Series] = [
        Series(
            name=name,
            color=PALETTE[i % len(PALETTE)],
            points=" ".join(f"{_fmt(sx(k))},{_fmt(sy(y))}" for k, y in points),
        )
        for i, (name, points) in enumerate(logs.items())
    ]

    template = _env.get_template("convergence.svg.j2")
    return template.render(
        width=WIDTH,
        height=HEIGHT,
        left=MARGIN_LEFT,
        top=MARGIN_TOP,
        right=WIDTH - MARGIN_RIGHT,
        bottom=HEIGHT - MARGIN_BOTTOM,
        title=title,
        ylabel=ylabel,
        x_ticks=x_ticks,
        y_ticks=y_ticks,
        series=lines,
    )


def write_convergence_svg(path: Path, series: Mapping[str, Sequence[Optional[float]]], title: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_convergence_svg(series, title), encoding="utf-8", newline="\n")
    return path
