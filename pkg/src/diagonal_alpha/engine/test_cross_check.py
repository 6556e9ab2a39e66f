import pytest

from diagonal_alpha.engine.alpha_engine import AlphaCalculator
from diagonal_alpha.engine.cross_check import (
    MethodDisagreement,
    check_modulus,
    prime_power_values,
    verify_up_to,
)
from diagonal_alpha.engine.prime_power import AlphaMethod, AlphaResult
from diagonal_alpha.oracle.polynomials import DiagonalPolynomial, GeneralPolynomial, PolynomialFamily

TWO_SQUARES = DiagonalPolynomial.of_family(PolynomialFamily.SUM_OF_TWO_SQUARES)
CUBES = DiagonalPolynomial(3, (1, 1))


def test_prime_power_values_cover_every_route():
    values = prime_power_values(TWO_SQUARES, 2, 5, AlphaCalculator())
    assert values == {
        "oracle": 17,
        "oracle-recurrence": 17,
        "closed-form": 17,
        "nr-recurrence": 17,
        "corollary": 17,
    }


def test_prime_power_values_without_exponent():
    values = prime_power_values(CUBES, 3, 3, AlphaCalculator())
    assert set(values) == {"oracle", "oracle-recurrence"}
    assert values["oracle"] == values["oracle-recurrence"]


def test_check_modulus_counts_comparisons():
    calculator = AlphaCalculator()
    checks, found = check_modulus(TWO_SQUARES, 8, calculator)
    assert checks == 12
    assert found == []
    checks, found = check_modulus(GeneralPolynomial(2, ((1, (1, 1)),)), 12, calculator)
    assert checks == 1
    assert found == []


@pytest.mark.parametrize(
    "f",
    [
        TWO_SQUARES,
        DiagonalPolynomial.of_family(PolynomialFamily.SUM_OF_THREE_SQUARES),
        DiagonalPolynomial.of_family(PolynomialFamily.DIFFERENCE_OF_SQUARES),
        DiagonalPolynomial(3, (1,)),
        CUBES,
    ],
)
def test_verify_up_to_finds_no_disagreement(f):
    report = verify_up_to(f, 100)
    assert report.ok
    assert report.first is None
    assert report.checks > 100


def test_verify_up_to_reports_a_broken_route(monkeypatch):
    monkeypatch.setattr(
        "diagonal_alpha.engine.cross_check.alpha_closed",
        lambda family, p, e, k=None: AlphaResult(p**e + 1, AlphaMethod.CLOSED_FORM),
    )
    report = verify_up_to(TWO_SQUARES, 50)
    assert not report.ok
    assert report.first.n == 2
    assert "closed-form=3" in report.first.describe()

    everything = verify_up_to(TWO_SQUARES, 10, stop_at_first=False)
    assert {d.n for d in everything.disagreements} == {2, 3, 4, 5, 7, 8, 9}


def test_disagreement_description():
    d = MethodDisagreement(9, "closed-form", 7, "oracle", 8)
    assert d.describe() == "n=9: closed-form=7 but oracle=8"
