"""Structured logging for solver runs and verification suites."""

import json
import logging
import time
import uuid
from contextvars import ContextVar
from datetime import datetime, timezone
from functools import wraps
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

# Context variables for run correlation
run_id_ctx: ContextVar[str] = ContextVar('run_id', default='')
benchmark_ctx: ContextVar[str] = ContextVar('benchmark', default='')
rule_ctx: ContextVar[str] = ContextVar('rule', default='')
seed_ctx: ContextVar[str] = ContextVar('seed', default='')

_CONTEXT_VARS = {
    'run_id': run_id_ctx,
    'benchmark': benchmark_ctx,
    'rule': rule_ctx,
    'seed': seed_ctx,
}

# Attributes every LogRecord carries; anything else came in through `extra`
_RESERVED = frozenset(logging.LogRecord(
    '', logging.INFO, '', 0, '', None, None
).__dict__) | {'message', 'asctime'}


class StructuredFormatter(logging.Formatter):
    """JSON formatter with run context fields."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as one JSON object."""
        ts = datetime.fromtimestamp(record.created, tz=timezone.utc)
        log_entry = {
            "ts": ts.strftime("%Y-%m-%dT%H:%M:%S.%fZ"),
            "level": record.levelname,
            "component": record.name,
            "message": record.getMessage(),
            "run_id": run_id_ctx.get(),
            "benchmark": benchmark_ctx.get(),
            "rule": rule_ctx.get(),
            "seed": seed_ctx.get(),
        }

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        for key, value in record.__dict__.items():
            if key not in _RESERVED:
                log_entry[key] = value

        return json.dumps(log_entry, default=str)


def setup_logging(
    component: str,
    level: str = "INFO",
    log_file: Optional[Path] = None,
    max_bytes: int = 10_000_000,
    backup_count: int = 5
) -> logging.Logger:
    """Setup structured logging for a component.

    Args:
        component: Logger name, normally the package name
        level: Logging level
        log_file: Optional file path for logging
        max_bytes: Max file size before rotation
        backup_count: Number of backup files to keep

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(component)
    logger.setLevel(getattr(logging, level.upper()))
    logger.handlers.clear()

    formatter = StructuredFormatter()

    # stderr, so CSV/summary output on stdout stays clean
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=max_bytes,
            backupCount=backup_count
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger


def with_context(**context_updates):
    """Decorator to set run context variables for the duration of a call."""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            tokens = []
            try:
                for key, value in context_updates.items():
                    var = _CONTEXT_VARS.get(key)
                    if var is not None:
                        tokens.append(var.set(str(value)))
                return func(*args, **kwargs)
            finally:
                for token in reversed(tokens):
                    token.var.reset(token)
        return wrapper
    return decorator


def generate_run_id() -> str:
    """Generate a new run ID."""
    return str(uuid.uuid4())


def set_run_context(run_id: str, benchmark: str = "", rule: str = "", seed: str = ""):
    """Set run context variables."""
    run_id_ctx.set(run_id)
    benchmark_ctx.set(benchmark)
    rule_ctx.set(rule)
    seed_ctx.set(seed)


class TimingContext:
    """Context manager for timing operations."""

    def __init__(self, operation: str, logger: Optional[logging.Logger] = None):
        self.operation = operation
        self.logger = logger or logging.getLogger("under_newton.timing")
        self.start_time = None
        self.duration_s = 0.0

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.duration_s = time.perf_counter() - self.start_time
        result = "error" if exc_type else "success"

        self.logger.info(
            f"Operation completed: {self.operation}",
            extra={
                "operation": self.operation,
                "duration_ms": self.duration_s * 1000,
                "result": result
            }
        )


def timed_operation(operation: str):
    """Decorator for timing operations."""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            with TimingContext(operation):
                return func(*args, **kwargs)
        return wrapper
    return decorator
