"""Exception hierarchy shared by all nofbench modules."""


class NofError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class BudgetError(NofError):
    """A size or search budget was exceeded."""

    def __init__(self, message, limit_name=None, best=None):
        super().__init__(message)
        self.limit_name = limit_name
        self.best = best


class LimitExceeded(BudgetError):
    """An exact search ran out of budget; ``best`` holds the best known answer, if any."""


class StructuralError(NofError):
    """An object violates its structural invariant."""


class PreconditionError(NofError):
    """An operation was called outside its precondition."""


class UnsupportedDimension(NofError):
    pass


class FormatError(NofError):
    """Base class for file-format parse errors."""


class MagicError(FormatError):
    pass


class HeaderError(FormatError):
    pass


class LengthError(FormatError):
    pass


class ValueRangeError(FormatError):
    pass


class ReportParseError(FormatError):
    pass


class ReportVersionError(NofError):
    """Report file written by an incompatible format version."""


class InvariantViolation(NofError):
    """An internal invariant failed; indicates a bug, never expected on valid input."""
