"""
alpha(n) for arbitrary n and surjectivity on Z_n.

alpha is multiplicative, so alpha(n) is assembled from alpha(p^e) over the
factorization of n. Each prime power goes through the first applicable route
(closed form, periodic recurrence, oracle recurrence) unless a method is
requested explicitly.
"""

import logging
import threading
from collections import OrderedDict
from typing import List, Optional, Tuple, Union

from ..arithmetic.integer_arith import factorize
from ..config.settings_config import get_memo_entries, get_modulus_limit, get_oracle_budget, get_profile_entries
from ..errors import (
    BudgetExceededError,
    InvalidInputError,
    PreconditionError,
    UnsupportedFamilyError,
    VerificationMismatchError,
)
from ..oracle.brute_force import Polynomial, alpha_oracle
from ..oracle.polynomials import DiagonalPolynomial, GeneralPolynomial, PolynomialFamily
from ..residues.residue_set import NSetProfile
from .prime_power import (
    AlphaMethod,
    AlphaResult,
    CrossCheck,
    alpha_closed,
    alpha_nr_recurrence,
    alpha_oracle_recurrence,
    base_profile,
    has_closed_form,
    profile_fits,
    require_exponent,
)

logger = logging.getLogger(__name__)

METHOD_CHOICES = ("auto", "closed", "recurrence", "oracle")

PolynomialLike = Union[PolynomialFamily, str, DiagonalPolynomial, GeneralPolynomial]


def as_polynomial(fam_or_poly: PolynomialLike, k: int = 2) -> Polynomial:
    """Family names become their canonical diagonal form; diagonal general polynomials are converted."""
    if isinstance(fam_or_poly, DiagonalPolynomial):
        return fam_or_poly
    if isinstance(fam_or_poly, GeneralPolynomial):
        return fam_or_poly.as_diagonal() or fam_or_poly
    try:
        family = PolynomialFamily(fam_or_poly)
    except ValueError:
        raise InvalidInputError(f"unknown polynomial family {fam_or_poly!r}")
    return DiagonalPolynomial.of_family(family, k)


def _fits_direct_oracle(f: Polynomial, n: int) -> bool:
    if isinstance(f, DiagonalPolynomial):
        return n <= min(get_oracle_budget(), get_modulus_limit() - 1)
    return n**f.variables <= get_oracle_budget() and n < get_modulus_limit()


class AlphaCalculator:
    """
    Computes alpha(n) with a per-prime-power memo.

    The memo is keyed by (polynomial, p, e, route) and guarded by a lock, so
    one calculator can be shared between threads; concurrent inserts of the
    same key store equal values. Both the memo and the profile store keep the
    most recently used entries only.
    """

    def __init__(self, memo_entries: Optional[int] = None, profile_entries: Optional[int] = None):
        self._memo: "OrderedDict[Tuple[Polynomial, int, int, str], AlphaResult]" = OrderedDict()
        self._profiles: "OrderedDict[Tuple[DiagonalPolynomial, int], NSetProfile]" = OrderedDict()
        self._memo_entries = memo_entries or get_memo_entries()
        self._profile_entries = profile_entries or get_profile_entries()
        self._lock = threading.Lock()

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()
            self._profiles.clear()

    def cached_entries(self) -> Tuple[int, int]:
        """(memo size, profile count)."""
        with self._lock:
            return len(self._memo), len(self._profiles)

    def _lookup(self, store: OrderedDict, key):
        with self._lock:
            value = store.get(key)
            if value is not None:
                store.move_to_end(key)
            return value

    def _store(self, store: OrderedDict, key, value, limit: int):
        with self._lock:
            value = store.setdefault(key, value)
            store.move_to_end(key)
            while len(store) > limit:
                store.popitem(last=False)
            return value

    def profile(self, f: DiagonalPolynomial, p: int) -> NSetProfile:
        """Base N-set profile of f at p, computed once per calculator while it stays cached."""
        cached = self._lookup(self._profiles, (f, p))
        if cached is None:
            cached = self._store(self._profiles, (f, p), base_profile(f, p), self._profile_entries)
        return cached

    def _nr_applicable(self, f: Polynomial, p: int, e: int) -> bool:
        if not isinstance(f, DiagonalPolynomial):
            return False
        if e >= 2 and not profile_fits(f, p):
            return False
        try:
            require_exponent(f, p)
        except PreconditionError:
            return False
        return True

    def _compute_prime_power(self, f: Polynomial, p: int, e: int, method: str) -> AlphaResult:
        if method == "oracle":
            return AlphaResult(alpha_oracle(f, p**e), AlphaMethod.ORACLE)

        if method == "closed":
            if not isinstance(f, DiagonalPolynomial) or f.family is None:
                raise UnsupportedFamilyError(f"no closed form for {f}")
            return alpha_closed(f.family, p, e, f.k)

        if method == "auto" and isinstance(f, DiagonalPolynomial) and has_closed_form(f, p):
            return alpha_closed(f.family, p, e, f.k)

        if self._nr_applicable(f, p, e):
            profile = self.profile(f, p) if e >= 2 else None
            return alpha_nr_recurrence(f, p, e, profile=profile)

        logger.debug("periodic recurrence unavailable for %s at p=%d, using the oracle recurrence", f, p)
        return alpha_oracle_recurrence(f, p, e)

    def prime_power(self, f: Polynomial, p: int, e: int, method: str = "auto") -> AlphaResult:
        """alpha(p^e) by the requested route ("recurrence" picks nr- or oracle-recurrence)."""
        if method not in METHOD_CHOICES:
            raise InvalidInputError(f"method must be one of {METHOD_CHOICES}, got {method!r}")
        key = (f, p, e, method)
        cached = self._lookup(self._memo, key)
        if cached is not None:
            return cached
        return self._store(self._memo, key, self._compute_prime_power(f, p, e, method), self._memo_entries)

    def _assemble(self, f: Polynomial, n: int, method: str) -> AlphaResult:
        if method == "oracle" and _fits_direct_oracle(f, n):
            return AlphaResult(alpha_oracle(f, n), AlphaMethod.ORACLE)

        components: List[AlphaResult] = [
            self.prime_power(f, p, e, method) for p, e in factorize(n)
        ]
        if not components:
            tag = AlphaMethod.ORACLE if method == "oracle" else AlphaMethod.MULTIPLICATIVE
            return AlphaResult(1, tag)

        value = 1
        for component in components:
            value *= component.value
        methods = {component.method for component in components}
        tag = methods.pop() if len(methods) == 1 else AlphaMethod.MULTIPLICATIVE
        return AlphaResult(value, tag)

    def _second_opinion(self, f: Polynomial, n: int, first: AlphaResult) -> AlphaResult:
        if first.method is AlphaMethod.ORACLE:
            return self._assemble(f, n, "auto")
        if _fits_direct_oracle(f, n):
            return AlphaResult(alpha_oracle(f, n), AlphaMethod.ORACLE)
        if first.method is not AlphaMethod.ORACLE_RECURRENCE:
            value = 1
            for p, e in factorize(n):
                value *= alpha_oracle_recurrence(f, p, e).value
            return AlphaResult(value, AlphaMethod.ORACLE_RECURRENCE)
        raise BudgetExceededError("cross-check oracle modulus", n, get_oracle_budget())

    def alpha(self, fam_or_poly: PolynomialLike, n: int, method: str = "auto",
              verify: bool = False, k: int = 2) -> AlphaResult:
        """
        alpha(n) = |A_n|.

        Args:
            fam_or_poly: Named family, diagonal or general polynomial
            n: Modulus >= 1
            method: auto, closed, recurrence or oracle
            verify: Recompute by a second route; disagreement raises VerificationMismatchError
            k: Degree used when fam_or_poly is the x^k family

        Returns:
            AlphaResult, with `checked` filled in when verify is set
        """
        if n < 1:
            raise InvalidInputError(f"n must be >= 1, got {n}")
        if method not in METHOD_CHOICES:
            raise InvalidInputError(f"method must be one of {METHOD_CHOICES}, got {method!r}")
        f = as_polynomial(fam_or_poly, k)
        result = self._assemble(f, n, method)
        if not verify:
            return result

        other = self._second_opinion(f, n, result)
        if other.value != result.value:
            logger.error(
                "alpha mismatch for %s at n=%d: %s=%d, %s=%d",
                f, n, result.method.value, result.value, other.method.value, other.value,
            )
            raise VerificationMismatchError(
                f"alpha({n}) for {f}: {result.method.value} gives {result.value}, "
                f"{other.method.value} gives {other.value}",
                first=result,
                second=other,
                n=n,
            )
        return AlphaResult(result.value, result.method, CrossCheck(other.method, True, other.value))

    def is_surjective(self, fam_or_poly: PolynomialLike, n: int, verify: bool = False, k: int = 2) -> bool:
        """
        True iff f hits every residue mod n.

        Named families and +-square forms are decided from the factorization
        of n; everything else computes alpha(n) and compares it with n.
        """
        if n < 1:
            raise InvalidInputError(f"n must be >= 1, got {n}")
        f = as_polynomial(fam_or_poly, k)
        verdict = surjectivity_rule(f, n)
        if verdict is None:
            return self.alpha(f, n, verify=verify).value == n
        if verify:
            direct = alpha_oracle(f, n) == n
            if direct != verdict:
                logger.error("surjectivity mismatch for %s at n=%d: rule=%s oracle=%s", f, n, verdict, direct)
                raise VerificationMismatchError(
                    f"surjectivity of {f} at n={n}: rule gives {verdict}, oracle gives {direct}",
                    first=verdict,
                    second=direct,
                    n=n,
                )
        return verdict


def _named_surjectivity(family: PolynomialFamily, n: int) -> bool:
    if family is PolynomialFamily.SUM_OF_TWO_SQUARES:
        return n % 4 != 0 and not any(p % 4 == 3 and e >= 2 for p, e in factorize(n))
    if family is PolynomialFamily.SUM_OF_THREE_SQUARES:
        return n % 8 != 0
    return n % 4 != 0


def surjectivity_rule(f: Polynomial, n: int) -> Optional[bool]:
    """The characterization for named families and +-square forms with t >= 2; None otherwise."""
    if n == 1:
        return True
    if not isinstance(f, DiagonalPolynomial):
        return None
    family = f.family
    if family is not None and family is not PolynomialFamily.POWER:
        return _named_surjectivity(family, n)
    if not f.is_plus_minus_squares() or f.t < 2:
        return None
    if all(c == -1 for c in f.coefficients) and f.t in (2, 3):
        # A_n of -f is the negation of A_n of f
        return _named_surjectivity(DiagonalPolynomial(2, (1,) * f.t).family, n)
    return True


_default_calculator = AlphaCalculator()


def alpha(fam_or_poly: PolynomialLike, n: int, method: str = "auto", verify: bool = False, k: int = 2) -> AlphaResult:
    return _default_calculator.alpha(fam_or_poly, n, method=method, verify=verify, k=k)


def is_surjective(fam_or_poly: PolynomialLike, n: int, verify: bool = False, k: int = 2) -> bool:
    return _default_calculator.is_surjective(fam_or_poly, n, verify=verify, k=k)
