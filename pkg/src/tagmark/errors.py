"""Exception types shared across the package.

All errors raised by tagmark derive from :class:`TagmarkError`, so callers
can catch one type at the CLI boundary. Each subclass also derives from
``ValueError`` to stay friendly to generic handling.
"""


class TagmarkError(Exception):
    """Base class for all tagmark errors."""


class PgmFormatError(TagmarkError, ValueError):
    """Malformed PGM data. Carries the byte offset where parsing failed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class KeyFormatError(TagmarkError, ValueError):
    """Corrupt or malformed key data.

    ``line`` is the 1-based number of the first bad line when the error
    comes from parsing a key file, else None.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line


class DimensionError(TagmarkError, ValueError):
    """Image, grid, or mark dimensions violate a pipeline requirement."""


class ParameterError(TagmarkError, ValueError):
    """Invalid embedding or attack parameter."""


class NumericInputError(TagmarkError, ValueError):
    """Non-finite values where finite reals are required."""
