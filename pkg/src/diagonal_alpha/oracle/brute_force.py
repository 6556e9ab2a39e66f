"""
Ground-truth brute-force computations.

Image sets of diagonal forms are built as the cyclic sumset of the per-variable
value sets {ci * x^k mod n}; general polynomials are enumerated over I_n^t in
chunks. Both are exact. Enumeration sizes are checked against the configured
oracle budget before any work starts.
"""

import itertools
import logging
from enum import Enum
from functools import lru_cache, reduce
from math import gcd, isqrt
from typing import List, Optional, Tuple, Union

import numpy as np

from ..arithmetic.integer_arith import is_prime, p_adic_valuation
from ..config.settings_config import (
    ORACLE_CONFIG,
    get_cache_modulus_limit,
    get_modulus_limit,
    get_oracle_budget,
    get_representation_budget,
)
from ..errors import BudgetExceededError, InvalidInputError, PreconditionError
from ..residues.residue_set import ResidueSet, cyclic_sumset, lift, n_set
from .polynomials import DiagonalPolynomial, GeneralPolynomial, Witness

logger = logging.getLogger(__name__)

Polynomial = Union[DiagonalPolynomial, GeneralPolynomial]


class RepresentationKind(str, Enum):
    TWO_SQUARES = "two-squares"
    THREE_SQUARES = "three-squares"
    DIFFERENCE = "difference"


def _check_modulus(n: int) -> None:
    if n < 1:
        raise InvalidInputError(f"modulus must be >= 1, got {n}")
    bound = min(get_oracle_budget(), get_modulus_limit() - 1)
    if n > bound:
        raise BudgetExceededError("oracle modulus", n, bound)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")


def power_table(n: int, k: int) -> np.ndarray:
    """x^k mod n for every x in I_n, as int64 (square-and-multiply over the whole range)."""
    base = np.arange(n, dtype=np.int64)
    result = np.full(n, 1 % n, dtype=np.int64)
    e = k
    while e:
        if e & 1:
            result = result * base % n
        base = base * base % n
        e >>= 1
    return result


def _term_values(coefficient: int, k: int, n: int) -> np.ndarray:
    return (coefficient % n) * power_table(n, k) % n


def _build_variable_values(coefficient: int, k: int, n: int) -> ResidueSet:
    bits = np.zeros(n, dtype=bool)
    bits[_term_values(coefficient, k, n)] = True
    return ResidueSet(n, bits)


def _build_image_diagonal(f: DiagonalPolynomial, n: int) -> ResidueSet:
    parts = [variable_values(c, f.k, n) for c in f.coefficients]
    result = reduce(cyclic_sumset, parts)
    logger.debug("image_diagonal(%s, %d): %d residues", f, n, result.cardinality())
    return result


_cached_variable_values = lru_cache(maxsize=ORACLE_CONFIG["cache_entries"])(_build_variable_values)
_cached_image_diagonal = lru_cache(maxsize=ORACLE_CONFIG["cache_entries"])(_build_image_diagonal)


def clear_oracle_caches() -> None:
    _cached_variable_values.cache_clear()
    _cached_image_diagonal.cache_clear()


def variable_values(coefficient: int, k: int, n: int) -> ResidueSet:
    """V = {c * x^k mod n : x in I_n}; negative c is reduced by floor-mod."""
    _check_modulus(n)
    if n > get_cache_modulus_limit():
        return _build_variable_values(coefficient, k, n)
    return _cached_variable_values(coefficient, k, n)


def image_diagonal(f: DiagonalPolynomial, n: int) -> ResidueSet:
    """A_n of a diagonal form, as the sumset fold of its per-variable value sets."""
    _check_modulus(n)
    if n > get_cache_modulus_limit():
        return _build_image_diagonal(f, n)
    return _cached_image_diagonal(f, n)


def image_general(f: GeneralPolynomial, n: int) -> ResidueSet:
    """A_n of an arbitrary polynomial by full enumeration of I_n^t."""
    if n < 1:
        raise InvalidInputError(f"modulus must be >= 1, got {n}")
    budget = get_oracle_budget()
    if n**f.variables > budget:
        raise BudgetExceededError(f"enumeration n^t (n={n}, t={f.variables})", n**f.variables, budget)
    if n >= get_modulus_limit():
        raise BudgetExceededError("oracle modulus", n, get_modulus_limit() - 1)

    tables = {}
    for _, exponents in f.terms:
        for e in exponents:
            if e not in tables:
                tables[e] = power_table(n, e)

    t = f.variables
    bits = np.zeros(n, dtype=bool)
    rest_shape = (n,) * (t - 1)

    def axis_view(table: np.ndarray, axis: int) -> np.ndarray:
        shape = [1] * (t - 1)
        shape[axis] = n
        return table.reshape(shape)

    for x0 in range(n):
        accumulated = np.zeros(rest_shape, dtype=np.int64)
        for coefficient, exponents in f.terms:
            term = (coefficient % n) * pow(x0, exponents[0], n) % n
            for axis, e in enumerate(exponents[1:]):
                if e:
                    term = term * axis_view(tables[e], axis) % n
            accumulated = (accumulated + term) % n
        bits[np.asarray(accumulated).ravel()] = True

    return ResidueSet(n, bits)


def image(f: Polynomial, n: int) -> ResidueSet:
    if isinstance(f, DiagonalPolynomial):
        return image_diagonal(f, n)
    return image_general(f, n)


def alpha_oracle(f: Polynomial, n: int) -> int:
    """alpha(n) = |A_n| by brute force."""
    return image(f, n).cardinality()


def _suffix_images(f: DiagonalPolynomial, n: int) -> List[ResidueSet]:
    images = [ResidueSet.from_members(n, [0])]
    for c in reversed(f.coefficients):
        images.append(cyclic_sumset(variable_values(c, f.k, n), images[-1]))
    return list(reversed(images))


def witness(f: Polynomial, n: int, a: int) -> Optional[Witness]:
    """
    Lexicographically first assignment in I_n^t with f = a (mod n).

    Args:
        f: Diagonal or general polynomial
        n: Modulus
        a: Target residue in I_n

    Returns:
        The first Witness in lexicographic order, or None when a is not in A_n
    """
    if not 0 <= a < n:
        raise InvalidInputError(f"target {a} is not a residue mod {n}")

    if isinstance(f, DiagonalPolynomial):
        _check_modulus(n)
        suffixes = _suffix_images(f, n)
        remaining = a
        assignment = []
        for i, c in enumerate(f.coefficients):
            values = _term_values(c, f.k, n)
            reachable = suffixes[i + 1].bits[(remaining - values) % n]
            if not reachable.any():
                return None
            x = int(np.argmax(reachable))
            assignment.append(x)
            remaining = int((remaining - values[x]) % n)
        return Witness(tuple(assignment), n, a)

    budget = get_oracle_budget()
    if n**f.variables > budget:
        raise BudgetExceededError(f"witness search n^t (n={n}, t={f.variables})", n**f.variables, budget)
    for assignment in itertools.product(range(n), repeat=f.variables):
        if f.evaluate(assignment, n) == a:
            return Witness(tuple(assignment), n, a)
    return None


def unit_image(f: DiagonalPolynomial, p: int, n: int) -> ResidueSet:
    """Residues mod p^n reached by an assignment with at least one coordinate coprime to p."""
    _check_prime(p)
    modulus = p**n
    _check_modulus(modulus)
    full_parts = [variable_values(c, f.k, modulus) for c in f.coefficients]
    units = np.arange(modulus) % p != 0
    result = ResidueSet.empty(modulus)
    for i, c in enumerate(f.coefficients):
        bits = np.zeros(modulus, dtype=bool)
        bits[_term_values(c, f.k, modulus)[units]] = True
        partial = ResidueSet(modulus, bits)
        others = [part for j, part in enumerate(full_parts) if j != i]
        if others:
            partial = cyclic_sumset(partial, reduce(cyclic_sumset, others))
        result = ResidueSet(modulus, result.bits | partial.bits)
    return result


def verify_lifting(f: DiagonalPolynomial, p: int, n: int) -> bool:
    """
    Check that every a in A_{p^n} with a witness having a unit coordinate lifts
    to all of a + j*p^n (0 <= j < p) in A_{p^(n+1)}.

    Raises PreconditionError when p divides a coefficient or n < 2s + 1 with
    p^s the exact power of p dividing k. A False return is a counterexample to
    a proved statement and is logged as an error.
    """
    _check_prime(p)
    if any(c % p == 0 for c in f.coefficients):
        raise PreconditionError(f"{p} divides a coefficient of {f}")
    s = p_adic_valuation(f.k, p)
    if n < 2 * s + 1:
        raise PreconditionError(f"level n={n} is below 2s+1={2 * s + 1} for p={p}, k={f.k}")

    upper = image_diagonal(f, p ** (n + 1))
    lifted = lift(unit_image(f, p, n), p ** (n + 1))
    failures = np.flatnonzero(lifted.bits & ~upper.bits)
    if failures.size:
        logger.error(
            "lifting failed for %s at p=%d, n=%d: %d is not in A_%d",
            f, p, n, int(failures[0]), p ** (n + 1),
        )
        return False
    return True


def n_set_oracle(f: Polynomial, p: int, n: int) -> ResidueSet:
    """Exact N_{p^n} from the oracle images at p^n and p^(n-1)."""
    _check_prime(p)
    if n < 1:
        raise InvalidInputError(f"N-set level must be >= 1, got {n}")
    return n_set(image(f, p**n), image(f, p ** (n - 1)))


def check_multiplicative_family(f: Polynomial, m1: int, m2: int) -> bool:
    """A_{m1 m2} equals the intersection of the lifts of A_{m1} and A_{m2} (coprime m1, m2)."""
    if gcd(m1, m2) != 1:
        raise InvalidInputError(f"{m1} and {m2} are not coprime")
    n = m1 * m2
    combined = lift(image(f, m1), n).bits & lift(image(f, m2), n).bits
    return bool(np.array_equal(combined, image(f, n).bits))


def _two_squares_at_most(m: int, cap: int) -> Optional[Tuple[int, int]]:
    for x in range(min(cap, isqrt(m)), -1, -1):
        rest = m - x * x
        if rest > x * x:
            break
        y = isqrt(rest)
        if y * y == rest:
            return x, y
    return None


def represent(kind: Union[RepresentationKind, str], m: int) -> Optional[Tuple[int, ...]]:
    """
    Exhaustive search for a representation of m.

    Sums are returned with descending coordinates (x >= y >= z), differences as
    (x, y) with m = x^2 - y^2 and the smallest such x.
    """
    kind = RepresentationKind(kind)
    budget = get_representation_budget()
    if abs(m) > budget:
        raise BudgetExceededError(f"{kind.value} search", abs(m), budget)

    if kind is RepresentationKind.DIFFERENCE:
        if m == 0:
            return (0, 0)
        a = abs(m)
        for d in range(isqrt(a), 0, -1):
            if a % d == 0 and (d + a // d) % 2 == 0:
                x, y = (d + a // d) // 2, (a // d - d) // 2
                return (x, y) if m > 0 else (y, x)
        return None

    if m < 0:
        raise InvalidInputError(f"{kind.value} needs m >= 0, got {m}")

    if kind is RepresentationKind.TWO_SQUARES:
        return _two_squares_at_most(m, m)

    for x in range(isqrt(m), -1, -1):
        rest = m - x * x
        if rest > 2 * x * x:
            break
        pair = _two_squares_at_most(rest, x)
        if pair is not None:
            return (x,) + pair
    return None
