"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class NumericError(RuntimeError):
    """A numerical procedure failed or produced an untrustworthy result."""


class PositivityError(NumericError):
    """A quantity required to be positive was not; carries the offending point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class OptimizationError(NumericError):
    """All refinement attempts failed; carries the best coarse-grid result."""

    def __init__(self, message, best_value=None, best_direction=None):
        super().__init__(message)
        self.best_value = best_value
        self.best_direction = best_direction
