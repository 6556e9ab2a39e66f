"""Membership in A_{p^n} read off the base-p digits of a residue."""

from typing import Union

from ..arithmetic.integer_arith import is_prime, p_adic_valuation
from ..errors import InvalidInputError, UnsupportedFamilyError
from ..oracle.polynomials import PolynomialFamily


def member_digit_rule(family: Union[PolynomialFamily, str], p: int, n: int, a: int) -> bool:
    """
    Decide a in A_{p^n} from the base-p expansion of a.

    Rules (j is the position of the lowest nonzero digit of a):
      x^2+y^2, p = 2:        excluded iff j <= n-2 and bit j+1 is set
      x^2+y^2, p = 3 mod 4:  member iff j is even
      x^2+y^2+z^2, p = 2:    excluded iff j is even, j <= n-3 and bits j, j+1, j+2 are set
      x^2-y^2, p = 2:        excluded iff n >= 2 and a = 2 (mod 4)
      x^2+y^2 at p = 1 mod 4, x^2+y^2+z^2 and x^2-y^2 at odd p: every residue

    Raises UnsupportedFamilyError for any other (family, p) pair.
    """
    try:
        family = PolynomialFamily(family)
    except ValueError:
        raise UnsupportedFamilyError(f"no digit rule for {family!r}")
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if n < 0:
        raise InvalidInputError(f"level must be >= 0, got {n}")
    if not 0 <= a < p**n:
        raise InvalidInputError(f"{a} is not a residue mod {p}^{n}")
    if family is PolynomialFamily.POWER:
        raise UnsupportedFamilyError("no digit rule for x^k")

    full = (
        (family is PolynomialFamily.SUM_OF_TWO_SQUARES and p % 4 == 1)
        or (family is not PolynomialFamily.SUM_OF_TWO_SQUARES and p != 2)
    )
    if full or a == 0:
        return True

    j = p_adic_valuation(a, p)

    if family is PolynomialFamily.SUM_OF_TWO_SQUARES:
        if p == 2:
            return not (j <= n - 2 and (a >> (j + 1)) & 1)
        return j % 2 == 0

    if family is PolynomialFamily.SUM_OF_THREE_SQUARES:
        return not (j % 2 == 0 and j <= n - 3 and (a >> j) & 0b111 == 0b111)

    return n < 2 or a % 4 != 2
