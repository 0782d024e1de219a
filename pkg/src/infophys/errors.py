"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested quantity."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, *, interval=None, depth=None, estimate=None):
        super().__init__(message)
        self.interval = interval
        self.depth = depth
        self.estimate = estimate


class UnsupportedSizeError(DomainError):
    """The exact enumeration path does not support an input this large."""
