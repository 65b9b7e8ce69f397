"""Thermal bound entanglement in harmonic-oscillator and XX spin chains."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BracketError,
    ConvergenceError,
    DomainError,
    PreconditionError,
    ThermoboundError,
)

__all__ = [
    "BracketError",
    "ConvergenceError",
    "DomainError",
    "PreconditionError",
    "ThermoboundError",
    "__version__",
]
