"""Exception hierarchy.

Everything raised deliberately by the package derives from ``RollrankError``.
The CLI maps ``ValidationError`` subclasses to exit code 2 and
``SingularSystemError`` to exit code 3.
"""


class RollrankError(Exception):
    """Base class for all package errors."""


class ValidationError(RollrankError, ValueError):
    """Input data or arguments violate a documented precondition."""


class MalformedDataError(ValidationError):
    """A raw value cannot be interpreted (e.g. a vote code outside 0-9)."""


class ParseError(MalformedDataError):
    """A source file could not be parsed.

    ``line`` is the 1-based line number of the offending record, when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionError(ValidationError):
    """Array shapes do not agree."""


class InsufficientDataError(ValidationError):
    """Too few members to build a similarity graph."""


class AnchorError(ValidationError):
    """Anchor specification is invalid."""


class AnchorNotFoundError(AnchorError):
    pass


class AmbiguousAnchorError(AnchorError):
    pass


class DuplicateAnchorError(AnchorError):
    pass


class OrientationError(AnchorError):
    pass


class SingularSystemError(RollrankError, ArithmeticError):
    """The unlabeled block of the Laplacian cannot be solved."""
