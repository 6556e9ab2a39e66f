from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from diagonal_alpha.arithmetic.integer_arith import (
    MAX_SUPPORTED,
    Factorization,
    crt_pair,
    factorize,
    is_prime,
    mod_pow,
    p_adic_valuation,
    pollard_rho,
)
from diagonal_alpha.errors import InvalidInputError


@pytest.mark.parametrize(
    "n, pairs",
    [
        (1, ()),
        (360, ((2, 3), (3, 2), (5, 1))),
        (9991, ((97, 1), (103, 1))),
        (2**61 - 1, ((2**61 - 1, 1),)),
    ],
)
def test_factorize_examples(n, pairs):
    assert factorize(n).pairs == pairs


def test_factorize_splits_cofactor_above_trial_limit():
    p, q = int(sympy.nextprime(10**7)), int(sympy.nextprime(10**8))
    assert factorize(p * q).pairs == ((p, 1), (q, 1))
    assert factorize(p * p).pairs == ((p, 2),)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_matches_sympy(n):
    result = factorize(n)
    assert dict(result.pairs) == sympy.factorint(n)
    assert result.value == n


@pytest.mark.parametrize("n", [0, -5, MAX_SUPPORTED + 1])
def test_factorize_rejects_out_of_range(n):
    with pytest.raises(InvalidInputError):
        factorize(n)


def test_is_prime_agrees_with_sympy():
    assert [n for n in range(3000) if is_prime(n)] == list(sympy.primerange(0, 3000))
    for n in (2**31 - 1, 2**61 - 1, 2**64 - 59, 3215031751, 341550071728321):
        assert is_prime(n) == sympy.isprime(n)


def test_pollard_rho_finds_a_proper_factor():
    n = 1000003 * 1000033
    factor = pollard_rho(n)
    assert factor is not None and 1 < factor < n and n % factor == 0
    assert pollard_rho(1000003) is None


def test_factorization_validates_pairs():
    with pytest.raises(InvalidInputError):
        Factorization(((4, 1),))
    with pytest.raises(InvalidInputError):
        Factorization(((3, 1), (2, 1)))
    with pytest.raises(InvalidInputError):
        Factorization(((2, 0),))
    fact = Factorization(((2, 3), (5, 1)))
    assert fact.value == 40
    assert fact.primes == [2, 5]
    assert fact.prime_powers() == [8, 5]
    assert len(fact) == 2


@pytest.mark.parametrize("n, p, expected", [(24, 2, 3), (7, 3, 0), (2**5 * 3**2, 2, 5)])
def test_p_adic_valuation(n, p, expected):
    assert p_adic_valuation(n, p) == expected


def test_p_adic_valuation_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        p_adic_valuation(0, 2)
    with pytest.raises(InvalidInputError):
        p_adic_valuation(12, 4)


@pytest.mark.parametrize("base, exp, m, expected", [(3, 0, 7, 1), (2, 10, 1000, 24), (5, 3, 13, 8), (-2, 3, 7, 6)])
def test_mod_pow(base, exp, m, expected):
    assert mod_pow(base, exp, m) == expected


def test_mod_pow_rejects_negative_exponent():
    with pytest.raises(InvalidInputError):
        mod_pow(2, -1, 7)


@pytest.mark.parametrize("a1, m1, a2, m2, expected", [(0, 3, 0, 5, 0), (2, 3, 3, 5, 8), (1, 4, 6, 7, 13)])
def test_crt_pair(a1, m1, a2, m2, expected):
    assert crt_pair(a1, m1, a2, m2) == expected


def test_crt_pair_rejects_common_factor_and_unreduced_residues():
    with pytest.raises(InvalidInputError):
        crt_pair(1, 4, 1, 6)
    with pytest.raises(InvalidInputError):
        crt_pair(5, 4, 1, 7)


@given(st.integers(1, 500), st.integers(1, 500), st.data())
def test_crt_pair_solves_both_congruences(m1, m2, data):
    if gcd(m1, m2) != 1:
        return
    a1 = data.draw(st.integers(0, m1 - 1))
    a2 = data.draw(st.integers(0, m2 - 1))
    x = crt_pair(a1, m1, a2, m2)
    assert 0 <= x < m1 * m2
    assert x % m1 == a1 and x % m2 == a2
