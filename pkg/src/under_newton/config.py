"""Configuration for the under-determined Newton solver."""

import os
from pathlib import Path

# Load environment variables from .env if present
try:
    from dotenv import load_dotenv
    here = Path(__file__).resolve()
    candidates = [
        here.parent.parent.parent / ".env",  # repo root when running from a checkout
        here.parent.parent / ".env",         # next to the package
        Path.cwd() / ".env",                 # current working directory
    ]
    for env_path in candidates:
        if env_path.exists():
            load_dotenv(env_path)
            break
except Exception:
    pass


def _env(name: str, default: str = "") -> str:
    return os.getenv(name, default)


# Iteration defaults
SOLVER = {
    "residual_tol": float(_env("UNDER_NEWTON_RESIDUAL_TOL", "1e-12")),
    "step_tol": float(_env("UNDER_NEWTON_STEP_TOL", "1e-14")),
    "max_iter": int(_env("UNDER_NEWTON_MAX_ITER", "50")),
    "pivot_tol": float(_env("UNDER_NEWTON_PIVOT_TOL", "1e-12")),
}

# Rate fits and Newton-differentiability scans
DIAGNOSTICS = {
    "nd_directions": int(_env("UNDER_NEWTON_ND_DIRECTIONS", "64")),
    "rate_floor": float(_env("UNDER_NEWTON_RATE_FLOOR", "1e-13")),
    # trailing iterates kept by order fits, at least 3
    "rate_tail": int(_env("UNDER_NEWTON_RATE_TAIL", "3")),
}

OUTPUT = {
    "dir": _env("UNDER_NEWTON_OUTPUT_DIR", "results"),
}

LOGGING = {
    "level": _env("UNDER_NEWTON_LOG_LEVEL", "WARNING"),
    "file": _env("UNDER_NEWTON_LOG_FILE", ""),
}
