"""Exception hierarchy shared by every module."""


class HadQuantError(Exception):
    """Base class for all domain errors raised by this package."""


class SizeLimitError(HadQuantError):
    """A requested order or enumeration exceeds the configured cap."""


class EntryError(HadQuantError, ValueError):
    """A matrix entry is not exactly -1 or +1."""


class StructureError(HadQuantError, ValueError):
    """A matrix is not Hadamard (wrong order or non-orthogonal rows)."""

    def __init__(self, message, rows=None):
        super().__init__(message)
        self.rows = rows


class DimensionError(HadQuantError, ValueError):
    """Operand lengths or orders do not agree."""


class ParameterError(HadQuantError, ValueError):
    """Quantizer parameters violate an operation's precondition."""


class BoundViolation(HadQuantError, AssertionError):
    """A measured value exceeded a proven bound."""
