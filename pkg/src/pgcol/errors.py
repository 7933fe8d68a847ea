"""Exception types shared across the package.

Each exception maps onto one CLI exit code (see :mod:`pgcol.cli`).
"""

from __future__ import annotations


class PgcolError(Exception):
    """Base class for all package errors."""


class UnsupportedField(PgcolError, ValueError):
    pass


class BudgetExceeded(PgcolError):
    """An enumeration would exceed its configured budget.

    Raised instead of silently truncating a search.
    """


class NotSkewError(PgcolError, ValueError):
    pass


class RainbowTriangleError(PgcolError, ValueError):
    """The input colouring has a rainbow triangle, so it cannot be decomposed."""

    def __init__(self, witness: tuple[int, int, int]):
        super().__init__(f"colouring has a rainbow triangle {list(witness)}")
        self.witness = witness


class TheoremViolation(PgcolError):
    """A proven structural statement failed on a concrete instance.

    This always indicates an implementation bug and must never be swallowed.
    """


class FormatError(PgcolError, ValueError):
    """Malformed pgcol input. ``code`` is one of the ``*_ERROR`` names below."""

    def __init__(self, code: str, line: int, message: str):
        super().__init__(f"{code} (line {line}): {message}")
        self.code = code
        self.line = line


BAD_MAGIC = "BAD_MAGIC"
BAD_HEADER = "BAD_HEADER"
LENGTH_MISMATCH = "LENGTH_MISMATCH"
COLOUR_RANGE = "COLOUR_RANGE"
BAD_BODY = "BAD_BODY"
