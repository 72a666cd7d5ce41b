"""Exception taxonomy shared by all procyclic modules.

Callers can rely on three coarse classes: bad arguments (UsageError),
work refused because it would exceed a size budget (ResourceLimitError),
and searches that ran out of room (SearchExhaustedError).  The CLI maps
these to exit codes 2 and 3.
"""


class UsageError(ValueError):
    """Arguments violate a documented precondition (mismatched prime,
    mismatched precision, invalid subgroup, ...)."""


class NotAUnitError(UsageError):
    """Inversion was requested for a non-invertible element."""


class ResourceLimitError(RuntimeError):
    """The requested computation exceeds a hard size budget."""


class SearchExhaustedError(RuntimeError):
    """A bounded search ended without a witness.

    ``counts`` holds one ``(level, census_size, coset_count)`` triple per
    level that was tried, so the caller can see what blocked the search.
    """

    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = list(counts or [])
