"""
alpha(p^n) at a single prime power.

Three routes are available:
- closed forms for the named families,
- the periodic recurrence alpha(p^n) = p*alpha(p^(n-1)) - n_r, valid when an
  exponent of p in f divides k and p divides no coefficient,
- the general recurrence alpha(p^n) = p*alpha(p^(n-1)) - |N_{p^n}| with every
  N-set taken from the oracle, valid for any polynomial.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Mapping, Optional, Union

import numpy as np

from ..arithmetic.integer_arith import is_prime, p_adic_valuation
from ..classify.representability import certified_exponent
from ..config.settings_config import get_profile_limit
from ..errors import (
    InvalidInputError,
    LemmaViolationError,
    PreconditionError,
    UncertifiedExponentError,
    UnsupportedFamilyError,
)
from ..oracle.brute_force import Polynomial, alpha_oracle, image, n_set_oracle
from ..oracle.polynomials import DiagonalPolynomial, PolynomialFamily
from ..residues.residue_set import NSetProfile, ResidueSet, scale

logger = logging.getLogger(__name__)


class AlphaMethod(str, Enum):
    CLOSED_FORM = "closed-form"
    NR_RECURRENCE = "nr-recurrence"
    ORACLE_RECURRENCE = "oracle-recurrence"
    ORACLE = "oracle"
    MULTIPLICATIVE = "multiplicative"


@dataclass(frozen=True)
class CrossCheck:
    """Second computation of the same value."""
    against: AlphaMethod
    agree: bool
    other_value: int


@dataclass(frozen=True)
class AlphaResult:
    value: int
    method: AlphaMethod
    checked: Optional[CrossCheck] = None

    def __post_init__(self):
        if self.value < 1:
            raise InvalidInputError(f"alpha is always >= 1, got {self.value}")
        if self.checked is not None and self.checked.agree and self.checked.other_value != self.value:
            raise InvalidInputError("a cross-check marked as agreeing must carry the same value")


def canonical_residue(n: int, k: int) -> int:
    """r with r = n (mod k) and 2 <= r <= k + 1."""
    return (n - 2) % k + 2


@dataclass(frozen=True)
class PrimePowerContext:
    """
    The quantities attached to (p, n, k): s with p^s exactly dividing k,
    d = gcd(k, p - 1) and the canonical residue r of n (None at n = 1).
    """
    p: int
    n: int
    k: int
    s: int
    d: int
    r: Optional[int]

    @classmethod
    def build(cls, p: int, n: int, k: int) -> "PrimePowerContext":
        if not is_prime(p):
            raise InvalidInputError(f"{p} is not prime")
        if n < 1 or k < 1:
            raise InvalidInputError(f"level and degree must be >= 1, got n={n}, k={k}")
        return cls(p, n, k, p_adic_valuation(k, p), gcd(k, p - 1), canonical_residue(n, k) if n >= 2 else None)

    def __post_init__(self):
        if self.r is not None and ((self.r - self.n) % self.k != 0 or not 2 <= self.r <= self.k + 1):
            raise InvalidInputError(f"r={self.r} is not the canonical residue of n={self.n} mod k={self.k}")
        if (self.p - 1) % self.d != 0 or self.k % self.d != 0:
            raise InvalidInputError(f"d={self.d} does not divide both k={self.k} and p-1={self.p - 1}")

    @property
    def q(self) -> int:
        """n = q*k + r."""
        return 0 if self.r is None else (self.n - self.r) // self.k


def _coerce_family(family: Union[PolynomialFamily, str]) -> PolynomialFamily:
    try:
        return PolynomialFamily(family)
    except ValueError:
        raise UnsupportedFamilyError(f"no closed form for {family!r}")


def has_closed_form(f: DiagonalPolynomial, p: int) -> bool:
    family = f.family
    if family is None:
        return False
    return family is not PolynomialFamily.POWER or f.k % p != 0


def alpha_closed(family: Union[PolynomialFamily, str], p: int, n: int, k: Optional[int] = None) -> AlphaResult:
    """
    Closed form of alpha(p^n) for a named family.

    Args:
        family: One of the named families
        p: Prime
        n: Level (n = 0 gives 1)
        k: Degree, required for x^k

    Returns:
        AlphaResult tagged closed-form
    """
    family = _coerce_family(family)
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if n < 0:
        raise InvalidInputError(f"level must be >= 0, got {n}")
    if n == 0:
        return AlphaResult(1, AlphaMethod.CLOSED_FORM)

    if family is PolynomialFamily.SUM_OF_TWO_SQUARES:
        if p == 2:
            value = 2 ** (n - 1) + 1
        elif p % 4 == 1:
            value = p**n
        elif n % 2 == 1:
            value = p * (p**n + 1) // (p + 1)
        else:
            value = (p ** (n + 1) + 1) // (p + 1)

    elif family is PolynomialFamily.SUM_OF_THREE_SQUARES:
        if p != 2:
            value = p**n
        elif n % 2 == 1:
            value = (5 * 2 ** (n - 1) + 1) // 3
        else:
            value = 2 * (5 * 2 ** (n - 2) + 1) // 3

    elif family is PolynomialFamily.DIFFERENCE_OF_SQUARES:
        if p != 2:
            value = p**n
        else:
            value = 2 if n == 1 else 3 * 2 ** (n - 2)

    else:
        if k is None or k < 1:
            raise InvalidInputError("x^k needs its degree k >= 1")
        if k % p == 0:
            raise UnsupportedFamilyError(
                f"no closed form for x^{k} at p={p} (p divides k); use the oracle recurrence"
            )
        r = (n - 1) % k + 1
        d = gcd(k, p - 1)
        numerator = p ** (n + k - 1) - p ** (r - 1)
        denominator = d * ((p**k - 1) // (p - 1))
        quotient, remainder = divmod(numerator, denominator)
        if remainder:
            raise LemmaViolationError(f"x^{k} closed form is not integral at p={p}, n={n}")
        value = quotient + 1

    return AlphaResult(value, AlphaMethod.CLOSED_FORM)


def profile_fits(f: DiagonalPolynomial, p: int) -> bool:
    """True when the base profile modulus p^(k+1) is within the configured limit."""
    return p ** (f.k + 1) <= get_profile_limit()


def require_exponent(f: DiagonalPolynomial, p: int, assume_exponent: bool = False) -> None:
    """
    Check the hypotheses of the periodic recurrence: p divides no coefficient
    and an exponent of p in f divides k (certified for named families, or
    asserted by the caller through assume_exponent).
    """
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if any(c % p == 0 for c in f.coefficients):
        raise PreconditionError(f"{p} divides a coefficient of {f}; use the oracle recurrence")
    if assume_exponent:
        return
    family = f.family
    e = certified_exponent(family, p, f.k) if family is not None else None
    if e is None or e == 0 or f.k % e != 0:
        raise UncertifiedExponentError(
            f"no certified exponent of {p} in {f} divides k={f.k}; use the oracle recurrence"
        )


def _base_sizes(profile: Union[NSetProfile, Mapping[int, int]], k: int) -> Mapping[int, int]:
    sizes = profile.base_sizes if isinstance(profile, NSetProfile) else dict(profile)
    missing = [r for r in range(2, k + 2) if r not in sizes]
    if missing:
        raise PreconditionError(f"profile is missing levels {missing} (needs 2..{k + 1})")
    return sizes


def alpha_nr_recurrence(
    f: DiagonalPolynomial,
    p: int,
    n: int,
    profile: Optional[Union[NSetProfile, Mapping[int, int]]] = None,
    alpha_p: Optional[int] = None,
    assume_exponent: bool = False,
) -> AlphaResult:
    """
    alpha(p^n) from alpha(p) by alpha(p^m) = p*alpha(p^(m-1)) - n_r, r = m mod k.

    Args:
        f: Diagonal polynomial
        p: Prime dividing none of the coefficients
        n: Level
        profile: Base N-sets (or just their sizes) for levels 2..k+1; computed when omitted
        alpha_p: alpha(p); taken from the oracle when omitted
        assume_exponent: Skip exponent certification (caller asserts it)
    """
    if n < 0:
        raise InvalidInputError(f"level must be >= 0, got {n}")
    require_exponent(f, p, assume_exponent)
    if n == 0:
        return AlphaResult(1, AlphaMethod.NR_RECURRENCE)

    value = alpha_oracle(f, p) if alpha_p is None else alpha_p
    if n >= 2:
        sizes = _base_sizes(base_profile(f, p) if profile is None else profile, f.k)
        for m in range(2, n + 1):
            value = p * value - sizes[canonical_residue(m, f.k)]
    return AlphaResult(value, AlphaMethod.NR_RECURRENCE)


def alpha_oracle_recurrence(f: Polynomial, p: int, n: int) -> AlphaResult:
    """alpha(p^n) = p*alpha(p^(n-1)) - |N_{p^n}| with every N-set from the oracle."""
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if n < 0:
        raise InvalidInputError(f"level must be >= 0, got {n}")
    if n == 0:
        return AlphaResult(1, AlphaMethod.ORACLE_RECURRENCE)
    value = alpha_oracle(f, p)
    for m in range(2, n + 1):
        value = p * value - n_set_oracle(f, p, m).cardinality()
    return AlphaResult(value, AlphaMethod.ORACLE_RECURRENCE)


def corollary_explicit(ctx: PrimePowerContext, alpha_p: int, base_sizes: Mapping[int, int]) -> int:
    """
    Explicit solution of the periodic recurrence.

    With S = sum_{j=2}^{k+1} n_j p^(k-j+1):
      n = 1 (mod k):  p^(n-1) alpha(p) - (p^(n-1) - 1) S / (p^k - 1)
      otherwise:      p^(n-1) alpha(p) - (p^(n-1) - p^(r-1)) S / (p^k - 1) - sum_{j=2}^{r} n_j p^(r-j)
    """
    p, n, k = ctx.p, ctx.n, ctx.k
    if n == 1:
        return alpha_p
    sizes = _base_sizes(base_sizes, k)
    total = sum(sizes[j] * p ** (k - j + 1) for j in range(2, k + 2))
    leading = p ** (n - 1) * alpha_p
    if ctx.r == k + 1:
        return leading - (p ** (n - 1) - 1) * total // (p**k - 1)
    tail = sum(sizes[j] * p ** (ctx.r - j) for j in range(2, ctx.r + 1))
    return leading - (p ** (n - 1) - p ** (ctx.r - 1)) * total // (p**k - 1) - tail


def _multiples_of_power(p: int, level: int, allowed_j) -> np.ndarray:
    return np.array([j * p**level for j in range(1, p) if allowed_j(j)], dtype=np.int64)


def base_profile(f: DiagonalPolynomial, p: int) -> NSetProfile:
    """
    Oracle N-sets N_{p^r} for r = 2..k+1, checked against their known shape.

    When p divides no coefficient: N_{p^r} lies in {j p^(r-1) : 0 < j < p}
    for 2s+2 <= r <= k+1, and N_{p^(k+1)} lies in {j p^k : j not in A_p},
    with equality once an exponent of p in f dividing k is certified. A
    violation raises LemmaViolationError.
    """
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    k = f.k
    sets = {r: n_set_oracle(f, p, r) for r in range(2, k + 2)}

    if all(c % p != 0 for c in f.coefficients):
        s = p_adic_valuation(k, p)
        for r in range(max(2, 2 * s + 2), k + 2):
            allowed = _multiples_of_power(p, r - 1, lambda j: True)
            extra = np.setdiff1d(np.flatnonzero(sets[r].bits), allowed)
            if extra.size:
                _lemma_violation(f"N_{p}^{r} of {f} has members off the multiples of {p}^{r - 1}", int(extra[0]))

        if 2 * s + 2 <= k + 1:
            residues_p = image(f, p)
            expected = ResidueSet.from_members(
                p ** (k + 1), _multiples_of_power(p, k, lambda j: j not in residues_p).tolist()
            )
            top = sets[k + 1]
            outside = np.flatnonzero(top.bits & ~expected.bits)
            if outside.size:
                _lemma_violation(f"N_{p}^{k + 1} of {f} contains j*{p}^{k} with j in A_{p}", int(outside[0]))
            try:
                require_exponent(f, p)
                certified = True
            except UncertifiedExponentError:
                certified = False
            if certified and top != expected:
                missing = np.flatnonzero(expected.bits & ~top.bits)
                _lemma_violation(f"N_{p}^{k + 1} of {f} is smaller than the certified description", int(missing[0]))

    profile = NSetProfile(p, k, sets)
    logger.debug("base profile of %s at p=%d: %s", f, p, dict(profile.base_sizes))
    return profile


def _lemma_violation(message: str, counterexample: int) -> None:
    logger.error("%s (counterexample %d)", message, counterexample)
    raise LemmaViolationError(message, counterexample)


def n_set_structured(
    f: DiagonalPolynomial,
    p: int,
    n: int,
    profile: Optional[NSetProfile] = None,
    assume_exponent: bool = False,
) -> ResidueSet:
    """N_{p^n} = p^(kq) N_{p^r} for n = qk + r, from the base profile."""
    if n < 2:
        raise InvalidInputError(f"structured N-sets start at level 2, got {n}")
    require_exponent(f, p, assume_exponent)
    profile = base_profile(f, p) if profile is None else profile
    ctx = PrimePowerContext.build(p, n, f.k)
    if ctx.r not in profile.base_sets:
        raise PreconditionError(f"profile has no level {ctx.r}")
    return scale(profile.base_sets[ctx.r], p ** (f.k * ctx.q), p**n)


def n_set_closed(family: Union[PolynomialFamily, str], p: int, n: int, k: Optional[int] = None) -> ResidueSet:
    """
    Explicit N_{p^n} (n >= 2) for the named families.

    x^2+y^2: {3*2^(n-2)} at 2, empty for odd n and {j p^(n-1)} for even n at
    p = 3 mod 4, empty at p = 1 mod 4. x^2+y^2+z^2: {7*2^(n-3)} for odd n at 2,
    empty otherwise. x^2-y^2: {2} at 4, empty otherwise. x^k with p not
    dividing k: {j p^(r-1)} for r <= k and {j p^k : j not a k-th power residue}
    for r = k + 1, scaled by p^(kq).
    """
    family = _coerce_family(family)
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if n < 2:
        raise InvalidInputError(f"closed N-sets start at level 2, got {n}")
    modulus = p**n
    members = []

    if family is PolynomialFamily.SUM_OF_TWO_SQUARES:
        if p == 2:
            members = [3 * 2 ** (n - 2)]
        elif p % 4 == 3 and n % 2 == 0:
            members = [j * p ** (n - 1) for j in range(1, p)]

    elif family is PolynomialFamily.SUM_OF_THREE_SQUARES:
        if p == 2 and n % 2 == 1:
            members = [7 * 2 ** (n - 3)]

    elif family is PolynomialFamily.DIFFERENCE_OF_SQUARES:
        if p == 2 and n == 2:
            members = [2]

    else:
        if k is None or k < 1:
            raise InvalidInputError("x^k needs its degree k >= 1")
        if k % p == 0:
            raise UnsupportedFamilyError(f"no closed N-set for x^{k} at p={p} (p divides k)")
        ctx = PrimePowerContext.build(p, n, k)
        residues = {pow(x, k, p) for x in range(p)}
        if ctx.r <= k:
            base = [j * p ** (ctx.r - 1) for j in range(1, p)]
        else:
            base = [j * p**k for j in range(1, p) if j not in residues]
        members = [b * p ** (k * ctx.q) for b in base]

    return ResidueSet.from_members(modulus, members)
