"""Exception hierarchy shared by all modules.

Config-level problems derive from :class:`ConfigError` (CLI exit code 1),
:class:`BudgetExceeded` maps to exit code 2.
"""


class ThreewayError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(ThreewayError, ValueError):
    """Invalid input: bad parameters, malformed specs or configs."""


# galois
class NotPrime(ConfigError):
    pass


class OrderTooLarge(ConfigError):
    pass


class NoIrreduciblePolynomial(ThreewayError):
    pass


class DivisionByZero(ThreewayError, ZeroDivisionError):
    pass


class InvalidElement(ConfigError):
    pass


# discrete_info
class InvalidPmf(ConfigError):
    pass


class AxisOverlap(ConfigError):
    pass


class ZeroGain(ConfigError):
    pass


class AlphabetMismatch(ConfigError):
    pass


# channels / codecs
class LengthMismatch(ConfigError):
    pass


class EmptyInput(ConfigError):
    pass


class OutOfRange(ConfigError):
    pass


# regions
class UnboundedRegion(ThreewayError):
    pass


class NotSenderSymmetrical(ConfigError):
    pass


class NotReciprocal(ConfigError):
    pass


class AlphaOutOfRange(ConfigError):
    pass


InvalidAlpha = AlphaOutOfRange


# engine
class IncompatibleScheme(ConfigError):
    pass


class BudgetExceeded(ThreewayError):
    pass


class InvariantViolation(ThreewayError):
    """An internal consistency check failed (CLI exit code 3)."""
