"""Exception hierarchy shared by all modules."""


class BimatroidError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(BimatroidError, ValueError):
    """Matrix shapes are incompatible with the requested operation."""


class PreconditionError(BimatroidError, ValueError):
    """An input violates the documented contract of an operation."""


class GroundMismatchError(PreconditionError):
    """Two objects that must share a ground set do not."""


class BudgetExceededError(PreconditionError):
    """An enumeration would exceed the configured size cap."""


class TheoremViolation(BimatroidError):
    """A proved statement failed on a concrete instance (this is a bug alarm)."""


class InternalConsistencyError(BimatroidError):
    """Two independent computations of the same quantity disagree."""


class SchemaError(PreconditionError):
    """Serialized input does not match the expected JSON layout."""
