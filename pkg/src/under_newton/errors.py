"""Exception hierarchy for the solver library."""

from typing import Optional

import numpy as np


class UnderNewtonError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(UnderNewtonError, ValueError):
    """Operand shapes disagree, or a system has more equations than unknowns."""


class NonFiniteValue(UnderNewtonError, ValueError):
    """A vector or matrix holds NaN or infinite entries."""


class NonFiniteResidual(NonFiniteValue):
    """Residual or differential evaluation produced non-finite values."""

    def __init__(self, message: str, point: Optional[np.ndarray] = None):
        super().__init__(message)
        self.point = point


class RankDeficient(UnderNewtonError):
    """Raised when the Gram matrix H Hᵀ has a pivot below the threshold."""

    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report


class ZeroSeparation(UnderNewtonError, ValueError):
    """x and x̄ coincide to within 1e-15, so the Newton quotient is undefined."""

    def __init__(self, message: str, separation: float):
        super().__init__(message)
        self.separation = separation


class NotAZero(UnderNewtonError, ValueError):
    """A point expected to lie on the zero set has a residual above 1e-10."""

    def __init__(self, message: str, residual_norm: float):
        super().__init__(message)
        self.residual_norm = residual_norm


class InsufficientData(UnderNewtonError):
    """Fewer than two usable pairs remain for a convergence-order fit."""

    def __init__(self, message: str, usable_pairs: int):
        super().__init__(message)
        self.usable_pairs = usable_pairs


class UsageError(UnderNewtonError):
    """Bad command-line arguments."""
