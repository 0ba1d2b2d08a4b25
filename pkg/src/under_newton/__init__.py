"""Under-determined Newton-type solver for (non)smooth equations G(x) = 0."""

__version__ = "0.1.0"
