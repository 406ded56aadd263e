"""Exception types shared across the package."""


class SemipiError(Exception):
    """Base class for all semipi errors."""


class RangeError(SemipiError, ValueError):
    """Input is outside the range an operation supports."""


class ResourceLimitError(SemipiError):
    """A requested table would exceed the configured memory budget."""


class InternalConsistencyError(SemipiError):
    """A mathematical invariant that must always hold was violated.

    This never indicates bad input; it signals a bug in the library
    itself and is raised loudly rather than silently mis-counting.
    """
