"""Exception hierarchy shared by all modules."""


class ThermoboundError(Exception):
    """Base class for library errors."""


class PreconditionError(ThermoboundError, ValueError):
    """An input violates a documented precondition."""


class DomainError(ThermoboundError, ValueError):
    """A scalar function was evaluated outside its domain."""


class ConvergenceError(ThermoboundError, ArithmeticError):
    """An iterative routine failed to reach its tolerance."""


class BracketError(ThermoboundError, ValueError):
    """A root search could not find (or keep) a sign change."""
