"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class ResourceError(RuntimeError):
    """The request exceeds a configured desk-scale limit."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to converge.

    Carries the best estimate found so far in ``best_estimate``.
    """

    def __init__(self, message: str, best_estimate: float | None = None):
        super().__init__(message)
        self.best_estimate = best_estimate
