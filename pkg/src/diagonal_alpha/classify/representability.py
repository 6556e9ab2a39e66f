"""
Representability predicates and exponent claims.

The predicates decide from the factorization alone whether an integer is a sum
of two squares, a sum of three squares or a difference of two squares. An
exponent claim (family, p, e) says that whenever p^e divides a value of the
family, the quotient is again a value; check_exponent tests such a claim over
every multiple of p^e up to a bound.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

from sympy import integer_nthroot

from ..arithmetic.integer_arith import factorize, is_prime
from ..config.settings_config import get_exponent_bound
from ..errors import InvalidInputError, UnsupportedFamilyError
from ..oracle.polynomials import PolynomialFamily

logger = logging.getLogger(__name__)

MAX_EXPONENT_BOUND = 1_000_000


def is_sum_two_squares(m: int) -> bool:
    """m = x^2 + y^2 iff every prime 3 mod 4 divides m to an even power."""
    if m < 0:
        raise InvalidInputError(f"sum of two squares needs m >= 0, got {m}")
    if m == 0:
        return True
    return all(e % 2 == 0 for p, e in factorize(m) if p % 4 == 3)


def is_sum_three_squares(m: int) -> bool:
    """m = x^2 + y^2 + z^2 iff m is not 4^a(8b+7)."""
    if m < 0:
        raise InvalidInputError(f"sum of three squares needs m >= 0, got {m}")
    if m == 0:
        return True
    while m % 4 == 0:
        m //= 4
    return m % 8 != 7


def is_diff_two_squares(m: int) -> bool:
    """m = x^2 - y^2 iff m is not 2 mod 4 (negative m by symmetry)."""
    return abs(m) % 4 != 2


def is_kth_power(m: int, k: int) -> bool:
    if k < 1:
        raise InvalidInputError(f"power must be >= 1, got {k}")
    if m < 0:
        return k % 2 == 1 and integer_nthroot(-m, k)[1]
    return integer_nthroot(m, k)[1]


@dataclass(frozen=True)
class ExponentClaim:
    """Claim that e is an exponent of the prime p in a named family (k only for x^k)."""
    family: PolynomialFamily
    p: int
    e: int
    k: Optional[int] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "family", PolynomialFamily(self.family))
        except ValueError:
            raise UnsupportedFamilyError(f"no representability predicate for {self.family!r}")
        if not is_prime(self.p):
            raise InvalidInputError(f"{self.p} is not prime")
        if self.e < 0:
            raise InvalidInputError(f"exponent must be >= 0, got {self.e}")
        if self.family is PolynomialFamily.POWER:
            if self.k is None or self.k < 1:
                raise InvalidInputError("an x^k claim needs the degree k >= 1")
        elif self.k not in (None, 2):
            raise InvalidInputError(f"{self.family.value} has degree 2, got k={self.k}")


@dataclass(frozen=True)
class ExponentVerdict:
    holds: bool
    counterexample: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds


def representability_predicate(family: Union[PolynomialFamily, str], k: Optional[int] = None) -> Callable[[int], bool]:
    """The value test of a named family over the integers."""
    try:
        family = PolynomialFamily(family)
    except ValueError:
        raise UnsupportedFamilyError(f"no representability predicate for {family!r}")
    if family is PolynomialFamily.SUM_OF_TWO_SQUARES:
        return is_sum_two_squares
    if family is PolynomialFamily.SUM_OF_THREE_SQUARES:
        return is_sum_three_squares
    if family is PolynomialFamily.DIFFERENCE_OF_SQUARES:
        return is_diff_two_squares
    if k is None:
        raise InvalidInputError("x^k needs its degree k")
    return lambda m: is_kth_power(m, k)


@lru_cache(maxsize=1024)
def check_exponent(claim: ExponentClaim, bound: Optional[int] = None) -> ExponentVerdict:
    """
    Test an exponent claim on every multiple v of p^e with 0 < v <= bound.

    Args:
        claim: Family, prime and exponent to test
        bound: Largest value examined (defaults to the configured exponent bound)

    Returns:
        ExponentVerdict; when it fails, `counterexample` is the smallest
        representable v whose quotient v / p^e is not representable
    """
    bound = get_exponent_bound() if bound is None else bound
    if not 1 <= bound <= MAX_EXPONENT_BOUND:
        raise InvalidInputError(f"bound must lie in [1, {MAX_EXPONENT_BOUND}], got {bound}")

    represents = representability_predicate(claim.family, claim.k)
    step = claim.p**claim.e
    for v in range(step, bound + 1, step):
        if represents(v) and not represents(v // step):
            logger.debug("exponent claim %s fails at v=%d", claim, v)
            return ExponentVerdict(False, v)
    return ExponentVerdict(True)


def claimed_exponent(family: Union[PolynomialFamily, str], p: int, k: Optional[int] = None) -> Optional[int]:
    """
    The theorem-backed exponent of p in a named family, or None when there is none.

    x^k: k for every p. x^2+y^2: 1 for p = 2 or p = 1 mod 4, 2 for p = 3 mod 4.
    x^2+y^2+z^2: 2 for p = 2, 1 for p = 1 mod 8, 2 otherwise. x^2-y^2: 1 for odd p.
    """
    family = PolynomialFamily(family)
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if family is PolynomialFamily.POWER:
        return k
    if family is PolynomialFamily.SUM_OF_TWO_SQUARES:
        return 2 if p % 4 == 3 else 1
    if family is PolynomialFamily.SUM_OF_THREE_SQUARES:
        return 1 if p % 8 == 1 else 2
    return None if p == 2 else 1


def certified_exponent(family: Union[PolynomialFamily, str], p: int, k: Optional[int] = None,
                       bound: Optional[int] = None) -> Optional[int]:
    """claimed_exponent, returned only when check_exponent confirms it up to the bound."""
    e = claimed_exponent(family, p, k)
    if e is None:
        return None
    claim = ExponentClaim(PolynomialFamily(family), p, e, k if PolynomialFamily(family) is PolynomialFamily.POWER else None)
    return e if check_exponent(claim, bound) else None
