"""
Exact integer utilities: factorization, primality, valuations, modular powers
and the Chinese remainder theorem for two moduli.

Factorization uses trial division by a 2-3 wheel up to TRIAL_DIVISION_LIMIT,
then a deterministic Miller-Rabin test and Brent's variant of Pollard's rho for
whatever cofactor remains. Inputs are limited to 64-bit values, the range where
the fixed Miller-Rabin bases are proven deterministic.
"""

import logging
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, List, Optional, Tuple

from ..errors import InvalidInputError

logger = logging.getLogger(__name__)

TRIAL_DIVISION_LIMIT = 1_000_000
MAX_SUPPORTED = 2**64 - 1

# Deterministic for every n < 3.3 * 10^24
MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class Factorization:
    """Prime decomposition as ascending (prime, exponent) pairs; empty for 1."""
    pairs: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        previous = 1
        for prime, exponent in self.pairs:
            if prime <= previous:
                raise InvalidInputError(f"primes must be strictly increasing: {self.pairs}")
            if exponent < 1:
                raise InvalidInputError(f"exponent of {prime} must be >= 1, got {exponent}")
            if not is_prime(prime):
                raise InvalidInputError(f"{prime} is not prime")
            previous = prime

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def value(self) -> int:
        """The integer this factorization reconstructs."""
        result = 1
        for prime, exponent in self.pairs:
            result *= prime**exponent
        return result

    @property
    def primes(self) -> List[int]:
        return [prime for prime, _ in self.pairs]

    def prime_powers(self) -> List[int]:
        return [prime**exponent for prime, exponent in self.pairs]


def _check_range(n: int, name: str = "n") -> None:
    if n > MAX_SUPPORTED:
        raise InvalidInputError(f"{name}={n} is above the supported 64-bit range")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in MILLER_RABIN_BASES:
        if n % p == 0:
            return n == p
    _check_range(n)

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in MILLER_RABIN_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def pollard_rho(n: int, max_iterations: int = 1_000_000) -> Optional[int]:
    """
    Pollard's rho with Brent's cycle detection.

    Args:
        n: Odd composite to split
        max_iterations: Iterations per polynomial x^2 + c before trying the next c

    Returns:
        A non-trivial factor of n, or None if none was found
    """
    if n % 2 == 0:
        return 2
    if is_prime(n):
        return None

    # Deterministic choice of polynomials keeps factorize reproducible
    for c in range(1, 64):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        iterations = 0
        while g == 1 and iterations < max_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
            iterations += r
        if g == n:
            # Backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
        logger.debug("pollard_rho: c=%d failed for n=%d", c, n)
    return None


def _split_large(n: int, found: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        found[n] = found.get(n, 0) + 1
        return
    root = isqrt(n)
    if root * root == n:
        _split_large(root, found)
        _split_large(root, found)
        return
    factor = pollard_rho(n)
    if factor is None:
        raise InvalidInputError(f"could not split composite cofactor {n}")
    _split_large(factor, found)
    _split_large(n // factor, found)


def _wheel_divisors(limit: int) -> Iterator[int]:
    yield 2
    yield 3
    d = 5
    while d <= limit:
        yield d
        yield d + 2
        d += 6


def factorize(n: int) -> Factorization:
    """
    Factor n >= 1 into ascending (prime, exponent) pairs.

    Args:
        n: Positive integer below 2^64

    Returns:
        Factorization whose product reconstructs n; empty for n = 1
    """
    if n < 1:
        raise InvalidInputError(f"factorize needs n >= 1, got {n}")
    _check_range(n)

    found = {}
    remaining = n
    exhausted = True
    for d in _wheel_divisors(TRIAL_DIVISION_LIMIT):
        if d * d > remaining:
            exhausted = False
            break
        while remaining % d == 0:
            found[d] = found.get(d, 0) + 1
            remaining //= d

    if remaining > 1:
        if not exhausted:
            # no divisor up to its square root is left, so the cofactor is prime
            found[remaining] = found.get(remaining, 0) + 1
        else:
            logger.debug("factorize: falling back to Pollard rho for cofactor %d", remaining)
            _split_large(remaining, found)

    return Factorization(tuple(sorted(found.items())))


def p_adic_valuation(n: int, p: int) -> int:
    """Largest s with p^s dividing n."""
    if n < 1:
        raise InvalidInputError(f"valuation needs n >= 1, got {n}")
    if not is_prime(p):
        raise InvalidInputError(f"valuation base must be prime, got {p}")
    s = 0
    while n % p == 0:
        n //= p
        s += 1
    return s


def mod_pow(base: int, exp: int, m: int) -> int:
    """base^exp reduced into [0, m)."""
    if m < 1:
        raise InvalidInputError(f"modulus must be >= 1, got {m}")
    if exp < 0:
        raise InvalidInputError(f"exponent must be >= 0, got {exp}")
    _check_range(m, "m")
    return pow(base, exp, m)


def crt_pair(a1: int, m1: int, a2: int, m2: int) -> int:
    """
    Unique x in [0, m1*m2) with x = a1 (mod m1) and x = a2 (mod m2).

    Args:
        a1: Residue in [0, m1)
        m1: First modulus
        a2: Residue in [0, m2)
        m2: Second modulus, coprime to m1

    Returns:
        The combined residue
    """
    if m1 < 1 or m2 < 1:
        raise InvalidInputError(f"moduli must be >= 1, got {m1} and {m2}")
    if gcd(m1, m2) != 1:
        raise InvalidInputError(f"moduli {m1} and {m2} are not coprime")
    if not (0 <= a1 < m1 and 0 <= a2 < m2):
        raise InvalidInputError(f"residues ({a1}, {a2}) not reduced for moduli ({m1}, {m2})")
    _check_range(m1 * m2, "m1*m2")
    inverse = pow(m1, -1, m2) if m2 > 1 else 0
    return (a1 + m1 * ((a2 - a1) * inverse % m2)) % (m1 * m2)
