class VerlindeError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(VerlindeError, ValueError):
    """Malformed user input: unknown family, bad rank, non-dominant weight, bad genus."""


class NotRegularError(InvalidInputError):
    """The Weyl denominator vanishes at the requested point."""


class ComputationRefused(VerlindeError, RuntimeError):
    """A cost or rank guard refused the computation."""


class ConsistencyError(VerlindeError, ArithmeticError):
    """An exact result failed an internal check (non-integral sum, oracle mismatch)."""


class NotRationalError(VerlindeError, ArithmeticError):
    """A cyclotomic number was asked for its rational value but is not rational."""


class CacheError(VerlindeError):
    """A cache file could not be read back."""
