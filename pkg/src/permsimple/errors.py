"""Exception types raised across the package."""


class PermSimpleError(ValueError):
    """Base class for all errors raised by permsimple."""


class EmptyInput(PermSimpleError):
    pass


class NotABijection(PermSimpleError):
    pass


class ParseError(PermSimpleError):
    pass


class DegreeMismatch(PermSimpleError):
    pass


class RunOutOfRange(PermSimpleError):
    pass


class NotStandardForm(PermSimpleError):
    pass


class DomainError(PermSimpleError):
    pass


class BoundExceeded(PermSimpleError):
    pass


class NotBSimple(PermSimpleError):
    pass


class NotCSimple(PermSimpleError):
    pass


class NotGSimple(PermSimpleError):
    pass


class TooShort(PermSimpleError):
    pass


class InvariantViolation(AssertionError):
    """An internal cross-check failed; the message names the invariant."""
