"""Exception types shared by every module."""


class SmoothBoundError(Exception):
    pass


class DomainError(SmoothBoundError, ValueError):
    """An argument lies outside the region where a formula is defined or claimed."""


class OutOfRangeError(DomainError):
    """A query reaches past what a precomputed table covers."""


class BoundaryError(DomainError):
    """A parameter sits on a knife edge where a rule is undefined."""


class ResourceError(SmoothBoundError, RuntimeError):
    """A configured work budget (memo size, visit cap) was exceeded.

    ``partial`` carries whatever was accumulated before stopping.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
