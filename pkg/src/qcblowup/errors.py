"""Exception types shared across the package."""


class UsageError(ValueError):
    """Invalid input from the caller: mismatched variable sets, out-of-domain
    parameters, malformed expressions."""


class ParseError(UsageError):
    """Text that does not conform to the canonical polynomial format."""


class BudgetError(RuntimeError):
    """A configured degree or pair budget was exceeded during a Groebner
    computation.  Raised instead of truncating silently."""


class StructuralError(RuntimeError):
    """A computed object violates a structural expectation, e.g. the leading
    terms of a basis do not cut out a finite staircase."""


class CheckFailure(RuntimeError):
    """An internal consistency check that must hold by construction failed.
    Signals a bug in the computation, not bad input."""
