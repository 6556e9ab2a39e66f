from math import gcd

import pytest

from diagonal_alpha.arithmetic.integer_arith import is_prime
from diagonal_alpha.errors import (
    InvalidInputError,
    LemmaViolationError,
    PreconditionError,
    UncertifiedExponentError,
    UnsupportedFamilyError,
)
from diagonal_alpha.engine.prime_power import (
    AlphaMethod,
    AlphaResult,
    CrossCheck,
    PrimePowerContext,
    alpha_closed,
    alpha_nr_recurrence,
    alpha_oracle_recurrence,
    base_profile,
    canonical_residue,
    corollary_explicit,
    has_closed_form,
    n_set_closed,
    n_set_structured,
    profile_fits,
    require_exponent,
)
from diagonal_alpha.oracle.brute_force import alpha_oracle, n_set_oracle
from diagonal_alpha.oracle.polynomials import DiagonalPolynomial, PolynomialFamily

TWO = PolynomialFamily.SUM_OF_TWO_SQUARES
THREE = PolynomialFamily.SUM_OF_THREE_SQUARES
DIFF = PolynomialFamily.DIFFERENCE_OF_SQUARES
POWER = PolynomialFamily.POWER

TWO_SQUARES = DiagonalPolynomial.of_family(TWO)
THREE_SQUARES = DiagonalPolynomial.of_family(THREE)
DIFFERENCE = DiagonalPolynomial.of_family(DIFF)
SQUARE = DiagonalPolynomial(2, (1,))
CUBE = DiagonalPolynomial(3, (1,))
CUBES = DiagonalPolynomial(3, (1, 1))


@pytest.mark.parametrize("n, k, r", [(2, 2, 2), (3, 2, 3), (4, 2, 2), (7, 3, 4), (5, 3, 2), (9, 1, 2)])
def test_canonical_residue(n, k, r):
    assert canonical_residue(n, k) == r


def test_prime_power_context():
    ctx = PrimePowerContext.build(7, 9, 3)
    assert (ctx.s, ctx.d, ctx.r, ctx.q) == (0, 3, 3, 2)
    assert PrimePowerContext.build(3, 1, 6).r is None
    assert PrimePowerContext.build(3, 5, 6).s == 1
    with pytest.raises(InvalidInputError):
        PrimePowerContext.build(6, 2, 2)
    with pytest.raises(InvalidInputError):
        PrimePowerContext(7, 9, 3, 0, 3, 2)


def test_alpha_result_validation():
    with pytest.raises(InvalidInputError):
        AlphaResult(0, AlphaMethod.ORACLE)
    with pytest.raises(InvalidInputError):
        AlphaResult(5, AlphaMethod.ORACLE, CrossCheck(AlphaMethod.CLOSED_FORM, True, 6))


@pytest.mark.parametrize(
    "family, p, n, k, expected",
    [
        (TWO, 2, 5, None, 17),
        (TWO, 3, 2, None, 7),
        (TWO, 7, 3, None, 301),
        (TWO, 5, 2, None, 25),
        (THREE, 2, 4, None, 14),
        (THREE, 2, 3, None, 7),
        (THREE, 3, 3, None, 27),
        (DIFF, 2, 3, None, 6),
        (DIFF, 2, 2, None, 3),
        (DIFF, 2, 1, None, 2),
        (POWER, 7, 1, 2, 4),
        (POWER, 7, 1, 3, 3),
        (POWER, 3, 2, 2, 4),
        (TWO, 3, 0, None, 1),
    ],
)
def test_alpha_closed_examples(family, p, n, k, expected):
    result = alpha_closed(family, p, n, k)
    assert result.value == expected
    assert result.method is AlphaMethod.CLOSED_FORM


@pytest.mark.parametrize(
    "family, p, k, top",
    [
        (TWO, 2, None, 12),
        (TWO, 3, None, 8),
        (TWO, 7, None, 5),
        (THREE, 2, None, 12),
        (THREE, 5, None, 5),
        (DIFF, 2, None, 12),
        (DIFF, 3, None, 7),
        (POWER, 2, 3, 12),
        (POWER, 5, 2, 6),
        (POWER, 7, 3, 5),
        (POWER, 5, 4, 6),
        (POWER, 11, 5, 4),
    ],
)
def test_alpha_closed_matches_oracle(family, p, k, top):
    f = DiagonalPolynomial.of_family(family, k or 2)
    for n in range(1, top + 1):
        assert alpha_closed(family, p, n, k).value == alpha_oracle(f, p**n), (p, n)


def test_alpha_closed_refusals():
    with pytest.raises(UnsupportedFamilyError):
        alpha_closed(POWER, 3, 2, 3)
    with pytest.raises(UnsupportedFamilyError):
        alpha_closed("x^3+y^3", 3, 2)
    with pytest.raises(InvalidInputError):
        alpha_closed(POWER, 3, 2)
    with pytest.raises(InvalidInputError):
        alpha_closed(TWO, 9, 2)


def test_has_closed_form():
    assert has_closed_form(TWO_SQUARES, 2)
    assert has_closed_form(CUBE, 7)
    assert not has_closed_form(CUBE, 3)
    assert not has_closed_form(CUBES, 7)


def test_profile_fits(monkeypatch):
    assert profile_fits(TWO_SQUARES, 97)
    assert not profile_fits(CUBE, 97)
    monkeypatch.setattr("diagonal_alpha.engine.prime_power.get_profile_limit", lambda: 8)
    assert profile_fits(TWO_SQUARES, 2)
    assert not profile_fits(TWO_SQUARES, 3)


def test_require_exponent():
    require_exponent(TWO_SQUARES, 3)
    require_exponent(CUBE, 3)
    with pytest.raises(UncertifiedExponentError):
        require_exponent(CUBES, 7)
    with pytest.raises(UncertifiedExponentError):
        require_exponent(DIFFERENCE, 2)
    with pytest.raises(PreconditionError):
        require_exponent(DiagonalPolynomial(2, (3, 1)), 3)
    require_exponent(CUBES, 7, assume_exponent=True)


def test_base_profile_sizes_of_squares_at_2():
    profile = base_profile(SQUARE, 2)
    assert dict(profile.base_sizes) == {2: 2, 3: 1}
    assert profile.base_sets[2].members() == [2, 3]
    assert profile.base_sets[3].members() == [5]


@pytest.mark.parametrize("k, p", [(2, 3), (2, 5), (3, 7), (3, 13), (4, 5)])
def test_base_profile_sizes_of_powers(k, p):
    d = gcd(k, p - 1)
    expected = {r: p - 1 for r in range(2, k + 1)}
    expected[k + 1] = (d - 1) * (p - 1) // d
    assert dict(base_profile(DiagonalPolynomial(k, (1,)), p).base_sizes) == expected


def test_base_profile_raises_on_violation(monkeypatch):
    from diagonal_alpha.residues.residue_set import ResidueSet

    real = n_set_oracle

    def corrupted(f, p, n):
        if n == 3:
            return ResidueSet.from_members(p**n, [1])
        return real(f, p, n)

    monkeypatch.setattr("diagonal_alpha.engine.prime_power.n_set_oracle", corrupted)
    with pytest.raises(LemmaViolationError) as excinfo:
        base_profile(SQUARE, 3)
    assert excinfo.value.counterexample == 1


def test_nr_recurrence_examples():
    assert alpha_nr_recurrence(TWO_SQUARES, 2, 4).value == 9
    assert alpha_nr_recurrence(THREE_SQUARES, 3, 3).value == 27
    assert alpha_nr_recurrence(SQUARE, 2, 4).value == 4
    assert [alpha_nr_recurrence(SQUARE, 2, n).value for n in range(0, 5)] == [1, 2, 2, 3, 4]
    assert alpha_nr_recurrence(TWO_SQUARES, 2, 4, profile={2: 1, 3: 1}, alpha_p=2).value == 9


def test_nr_recurrence_preconditions():
    with pytest.raises(UncertifiedExponentError):
        alpha_nr_recurrence(CUBES, 7, 3)
    with pytest.raises(PreconditionError):
        alpha_nr_recurrence(TWO_SQUARES, 2, 4, profile={2: 1})


@pytest.mark.parametrize(
    "f, p, top",
    [(TWO_SQUARES, 2, 12), (TWO_SQUARES, 3, 7), (THREE_SQUARES, 2, 12), (SQUARE, 2, 12), (CUBE, 3, 6), (CUBE, 2, 12)],
)
def test_nr_recurrence_matches_oracle(f, p, top):
    for n in range(1, top + 1):
        assert alpha_nr_recurrence(f, p, n).value == alpha_oracle(f, p**n), n


def test_oracle_recurrence_examples():
    assert alpha_oracle_recurrence(THREE_SQUARES, 3, 3).value == 27
    assert alpha_oracle_recurrence(TWO_SQUARES, 2, 3).value == 5
    for n in range(1, 6):
        assert alpha_oracle_recurrence(CUBES, 3, n).value == alpha_oracle(CUBES, 3**n)
    assert alpha_oracle_recurrence(CUBES, 3, 0).value == 1


def test_corollary_explicit():
    sizes = {2: 1, 3: 1}
    assert corollary_explicit(PrimePowerContext.build(2, 5, 2), 2, sizes) == 17
    assert corollary_explicit(PrimePowerContext.build(2, 4, 2), 2, sizes) == 9
    assert corollary_explicit(PrimePowerContext.build(2, 1, 2), 2, sizes) == 2


@pytest.mark.parametrize("f, p", [(TWO_SQUARES, 3), (CUBE, 7), (DiagonalPolynomial(3, (1, 2)), 7)])
def test_corollary_agrees_with_recurrence(f, p):
    profile = base_profile(f, p)
    alpha_p = alpha_oracle(f, p)
    for n in range(1, 10):
        ctx = PrimePowerContext.build(p, n, f.k)
        expected = alpha_nr_recurrence(f, p, n, profile=profile, alpha_p=alpha_p, assume_exponent=True).value
        assert corollary_explicit(ctx, alpha_p, profile.base_sizes) == expected


def test_n_set_structured_examples():
    assert n_set_structured(TWO_SQUARES, 2, 6).members() == [48]
    assert n_set_structured(TWO_SQUARES, 3, 3).is_empty()
    assert n_set_structured(THREE_SQUARES, 2, 7).members() == [112]
    with pytest.raises(InvalidInputError):
        n_set_structured(TWO_SQUARES, 2, 1)


def test_n_set_structured_matches_oracle():
    for f, p, top in [(TWO_SQUARES, 2, 12), (TWO_SQUARES, 7, 5), (SQUARE, 3, 8), (CUBE, 7, 5)]:
        profile = base_profile(f, p)
        for n in range(2, top + 1):
            assert n_set_structured(f, p, n, profile) == n_set_oracle(f, p, n), (f, p, n)


@pytest.mark.parametrize(
    "family, p, k, top",
    [
        (TWO, 2, None, 12),
        (TWO, 3, None, 8),
        (TWO, 5, None, 5),
        (THREE, 2, None, 12),
        (THREE, 3, None, 6),
        (DIFF, 2, None, 10),
        (DIFF, 5, None, 4),
        (POWER, 7, 3, 5),
        (POWER, 5, 2, 5),
        (POWER, 3, 4, 7),
    ],
)
def test_n_set_closed_matches_oracle(family, p, k, top):
    f = DiagonalPolynomial.of_family(family, k or 2)
    for n in range(2, top + 1):
        assert n_set_closed(family, p, n, k) == n_set_oracle(f, p, n), n


def test_n_set_closed_refusals():
    with pytest.raises(InvalidInputError):
        n_set_closed(TWO, 2, 1)
    with pytest.raises(UnsupportedFamilyError):
        n_set_closed(POWER, 2, 4, 2)


PRIME_POWER_LIMIT = 10**5


def levels_up_to(p, limit=PRIME_POWER_LIMIT, start=1):
    top = start
    while p ** (top + 1) <= limit:
        top += 1
    return range(start, top + 1)


@pytest.mark.slow
@pytest.mark.parametrize(
    "family, p, levels",
    [
        (TWO, 2, range(1, 15)),
        (TWO, 3, levels_up_to(3)),
        (TWO, 7, levels_up_to(7)),
        (TWO, 11, levels_up_to(11)),
        (THREE, 2, range(1, 13)),
        (DIFF, 2, range(1, 15)),
    ],
)
def test_closed_forms_match_oracle_on_full_grid(family, p, levels):
    f = DiagonalPolynomial.of_family(family)
    for n in levels:
        assert alpha_closed(family, p, n).value == alpha_oracle(f, p**n), n


@pytest.mark.slow
@pytest.mark.parametrize(
    "family, p",
    [(TWO, 5), (TWO, 13), (TWO, 17), (THREE, 3), (THREE, 5), (THREE, 7), (DIFF, 3), (DIFF, 5), (DIFF, 7)],
)
def test_named_forms_are_surjective_at_odd_prime_powers(family, p):
    f = DiagonalPolynomial.of_family(family)
    for n in levels_up_to(p):
        assert alpha_oracle(f, p**n) == p**n, n


@pytest.mark.slow
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_power_closed_form_and_base_sizes_on_full_grid(k):
    f = DiagonalPolynomial(k, (1,))
    for p in (q for q in range(2, 51) if is_prime(q) and k % q != 0):
        for n in levels_up_to(p):
            assert alpha_closed(POWER, p, n, k).value == alpha_oracle(f, p**n), (p, n)
        if p ** (k + 1) <= PRIME_POWER_LIMIT:
            d = gcd(k, p - 1)
            expected = {r: p - 1 for r in range(2, k + 1)}
            expected[k + 1] = (d - 1) * (p - 1) // d
            assert dict(base_profile(f, p).base_sizes) == expected, p


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3, 5])
def test_n_set_scaling_on_full_grid(p):
    profile = base_profile(TWO_SQUARES, p)
    for n in levels_up_to(p, start=2):
        assert n_set_structured(TWO_SQUARES, p, n, profile) == n_set_oracle(TWO_SQUARES, p, n), n
