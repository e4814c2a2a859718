"""Exception taxonomy shared by all qsym modules.

The CLI maps these onto exit codes: any :class:`QsymError` is a usage or
input problem (exit 2); a mathematical check that runs but fails is never
an exception, it is a report with ``pass = False`` (exit 1).
"""


class QsymError(Exception):
    """Base class for all errors raised by qsym."""


class DimensionError(QsymError):
    """Operands have incompatible sizes (vertex counts, widths, dims)."""


class CapacityError(QsymError):
    """The requested instance exceeds a configured enumeration bound."""


class UsageError(QsymError):
    """An argument violates a documented precondition."""


class GraphFormatError(UsageError):
    """A graph description is malformed (loops, duplicate edges, bad JSON)."""
