"""Exception hierarchy shared by all uflab modules."""


class UflabError(Exception):
    """Base class for all package errors."""


class ValidationError(UflabError):
    """A value violates a structural invariant (bad input, not a bug)."""


class ResourceGuardError(UflabError):
    """An enumeration was refused because the instance is too large."""


class PropertyViolationError(UflabError):
    """A mathematical property that should be a theorem failed to hold.

    Raised by internal cross-checks.  Seeing this exception means either a
    genuine implementation defect or a falsified theorem; it is never a
    normal error condition.
    """
