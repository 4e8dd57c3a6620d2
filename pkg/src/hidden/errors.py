"""Exception hierarchy shared by every module."""


class HiddenError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HiddenError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NotInvertibleError(DomainError):
    pass


class IntegrityError(HiddenError):
    """A value failed an exact divisibility check.

    Raised when watermarked data is not a multiple of the key, which is the
    signal for tampering or a wrong key.
    """


class AmbiguityError(HiddenError):
    pass


class RangeError(DomainError):
    pass


class MalformedCiphertextError(HiddenError):
    pass


class FactorizationError(HiddenError):
    pass


class ConfigError(HiddenError):
    """Invalid scenario or protocol configuration (including bound violations)."""


class AuthenticationError(HiddenError):
    """Authenticated symmetric decryption failed."""
