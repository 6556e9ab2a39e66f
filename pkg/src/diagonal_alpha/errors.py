"""Exception hierarchy shared by every module of the package."""

from typing import Optional


class CongruenceError(Exception):
    """Base class for all errors raised by diagonal_alpha."""


class InvalidInputError(CongruenceError, ValueError):
    """An argument is outside the supported range or malformed."""


class ModulusMismatchError(InvalidInputError):
    """Two residue sets (or a set and a target modulus) do not fit together."""


class ConfigurationError(CongruenceError):
    """A configuration or environment value cannot be used."""


class BudgetExceededError(CongruenceError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, what: str, requested: int, bound: int):
        self.what = what
        self.requested = requested
        self.bound = bound
        super().__init__(f"{what}: {requested} exceeds the configured bound {bound}")


class UnsupportedFamilyError(CongruenceError):
    """No closed form, digit rule or exponent claim exists for this request."""


class PreconditionError(CongruenceError):
    """The hypotheses of a structural statement are not met by the inputs."""


class UncertifiedExponentError(PreconditionError):
    """No exponent of p dividing k could be certified for the polynomial."""


class LemmaViolationError(CongruenceError):
    """A proved structural statement failed on computed data (an implementation bug)."""

    def __init__(self, message: str, counterexample: Optional[object] = None):
        self.counterexample = counterexample
        super().__init__(message)


class VerificationMismatchError(CongruenceError):
    """Two computation methods produced different values."""

    def __init__(self, message: str, first: object = None, second: object = None, n: Optional[int] = None):
        self.first = first
        self.second = second
        self.n = n
        super().__init__(message)


class PolynomialSyntaxError(InvalidInputError):
    """The polynomial expression could not be parsed."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")
