"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input violates a parameter-domain inequality or a precondition."""


class ConvergenceError(ArithmeticError):
    """A series cannot be truncated to the requested tolerance."""


class IterationLimitError(RuntimeError):
    """An iteration that is guaranteed to terminate hit its safety cap."""


class ValidationError(RuntimeError):
    """A computed object failed an internal consistency check."""
