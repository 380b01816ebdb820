"""Exception hierarchy shared by the package."""


class ArrangementError(Exception):
    """Base class for all errors raised by this package."""


class BackendMismatchError(ArrangementError, TypeError):
    """Scalars from different field backends were combined."""


class FieldError(ArrangementError, ValueError):
    """The requested field cannot represent the construction."""


class DegeneratePairError(ArrangementError, ValueError):
    """Two equal points (or lines) do not determine a line (or point)."""


class DuplicateLineError(ArrangementError, ValueError):
    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class OverlapError(ArrangementError, ValueError):
    """A fat point support coincides with a point of the configuration."""


class InconclusiveError(ArrangementError):
    """Independent primes disagreed; the result cannot be reported."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class BadPrimeError(ArrangementError, ValueError):
    """Input coordinates cannot be reduced modulo the chosen prime."""


class NotUniqueError(ArrangementError):
    def __init__(self, message, dimension):
        super().__init__(message)
        self.dimension = dimension


class PreconditionError(ArrangementError, ValueError):
    """An operation was called on an input outside its domain."""


class AdditionDeletionError(ArrangementError):
    """A restriction count matched neither exponent."""

    def __init__(self, message, step_index, count, splitting):
        super().__init__(message)
        self.step_index = step_index
        self.count = count
        self.splitting = splitting


class DocumentError(ArrangementError, ValueError):
    """Malformed input document; ``path`` locates the offending JSON node."""

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class RenderError(ArrangementError, ValueError):
    """No real embedding is available to draw the input."""
