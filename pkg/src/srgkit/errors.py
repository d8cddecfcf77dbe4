"""Exception types shared across srgkit."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class NotInScope(DomainError):
    """The result would fall outside the k > c >= 1 parameter range."""


class Singular(ArithmeticError):
    """A matrix that must be invertible has determinant zero."""


class NotPSD(ValueError):
    """A Gram target is not positive semi-definite, so no factor exists."""


class NotZeroOne(ValueError):
    """A reconstructed adjacency block is not a symmetric 0/1 matrix.

    ``entry`` holds ``(row, col, value)`` for the first offending entry.
    """

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class ParseError(ValueError):
    """Malformed text input; ``offset`` is the 0-based byte position."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset
