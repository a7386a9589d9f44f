"""Exception types shared by the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation (e.g. A != 0 for inversion)."""


class NumericalError(RuntimeError):
    """A quadrature or root-finding step failed to reach its tolerance.

    ``estimate`` carries the achieved error estimate when one is available.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class NotDefinableError(NumericalError):
    """An improper integral did not settle toward its endpoint.

    ``partials`` holds the partial values computed before giving up.
    """

    def __init__(self, message, partials=None, estimate=None):
        super().__init__(message, estimate=estimate)
        self.partials = [] if partials is None else list(partials)
