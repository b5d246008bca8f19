class PreconditionError(ValueError):
    """An operation was called on input that violates its contract."""


class NotOuterplanarError(PreconditionError):
    """Raised when an outerplanar graph was required. Carries the witness."""

    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class InternalError(RuntimeError):
    """A structural guarantee failed to hold. This indicates a bug."""


class UnverifiableError(RuntimeError):
    """The instance is too large for the brute-force oracle."""


class InputFormatError(ValueError):
    """An instance file could not be parsed."""
