"""Exception hierarchy shared across doldkit."""


class DoldkitError(Exception):
    """Base class for every error raised by doldkit."""


class UnsupportedInputError(DoldkitError, ValueError):
    """Input lies outside the range an operation supports."""


class DomainError(DoldkitError, ValueError):
    """Argument violates a mathematical precondition."""


class CostCapError(DoldkitError):
    """An exact computation would exceed the configured size cap."""


class NeedsMoreDataError(DoldkitError, ValueError):
    """Not enough terms were supplied to certify the answer."""


class HypothesisViolation(DoldkitError):
    """A theorem driver was called on input that fails its hypotheses."""


class NeedsOverrideError(HypothesisViolation):
    """The splitting-field discriminant cannot be derived and must be supplied."""


class CensusUndefinedError(DoldkitError):
    """The Dold condition fails, so orbit counts are not integers.

    ``n`` is the first index where divisibility fails.
    """

    def __init__(self, n, message=None):
        self.n = n
        super().__init__(message or f"Dold condition fails at n={n}")


class InputFormatError(DoldkitError, ValueError):
    """A recurrence or matrix description could not be parsed."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
