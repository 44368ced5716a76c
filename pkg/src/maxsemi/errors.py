"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when user-supplied data violates a documented precondition."""


class CapacityError(RuntimeError):
    """Raised when an input exceeds a configured desk-scale bound."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound
