"""Exception hierarchy shared by every module."""


class HahnFieldError(Exception):
    pass


class StructuralError(HahnFieldError, ValueError):
    """Operands live over different index sets (or are malformed)."""


class DomainError(HahnFieldError, ValueError):
    """Operation undefined at this argument, e.g. the valuation of zero."""


class PreconditionError(HahnFieldError, ValueError):
    pass


class InconsistencyError(HahnFieldError, ValueError):
    """Input data contradicts itself (e.g. two psi values for one class)."""


class InconclusiveError(HahnFieldError):
    """A truncation budget was too small to certify a result.

    Distinct from a failed check: nothing was refuted.
    """
