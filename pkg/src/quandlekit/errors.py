"""Exception types shared across the package."""


class QuandleKitError(Exception):
    """Base class for all errors raised by quandlekit."""


class InvalidParameter(QuandleKitError, ValueError):
    """A numeric or structural argument is outside the supported range."""


class InvalidInput(QuandleKitError, ValueError):
    """An input object does not satisfy the preconditions of an operation."""


class ParseError(QuandleKitError, ValueError):
    """Malformed PD code or spec string."""


class AssumptionViolated(QuandleKitError):
    """The centralizer of h is non-abelian, or the section cannot be corrected."""


class ResourceLimit(QuandleKitError):
    """A computation would exceed the configured size cap."""


class InternalError(QuandleKitError, AssertionError):
    """An internal consistency check failed (indicates a bug)."""
