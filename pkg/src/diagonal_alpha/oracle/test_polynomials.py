import pytest

from diagonal_alpha.errors import InvalidInputError
from diagonal_alpha.oracle.polynomials import (
    DiagonalPolynomial,
    GeneralPolynomial,
    PolynomialFamily,
    variable_names,
)


@pytest.mark.parametrize(
    "k, coefficients, family",
    [
        (2, (1, 1), PolynomialFamily.SUM_OF_TWO_SQUARES),
        (2, (1, -1), PolynomialFamily.DIFFERENCE_OF_SQUARES),
        (2, (-1, 1), PolynomialFamily.DIFFERENCE_OF_SQUARES),
        (2, (1, 1, 1), PolynomialFamily.SUM_OF_THREE_SQUARES),
        (5, (1,), PolynomialFamily.POWER),
        (2, (2, 1), None),
        (3, (1, 1), None),
        (2, (-1,), None),
    ],
)
def test_family_detection(k, coefficients, family):
    assert DiagonalPolynomial(k, coefficients).family is family


def test_of_family_builds_canonical_forms():
    assert DiagonalPolynomial.of_family(PolynomialFamily.DIFFERENCE_OF_SQUARES).coefficients == (1, -1)
    assert DiagonalPolynomial.of_family(PolynomialFamily.POWER, 4) == DiagonalPolynomial(4, (1,))
    assert PolynomialFamily.POWER.degree is None
    assert PolynomialFamily.SUM_OF_THREE_SQUARES.degree == 2


@pytest.mark.parametrize(
    "k, coefficients",
    [(0, (1,)), (2, ()), (2, (1, 0))],
)
def test_diagonal_validation(k, coefficients):
    with pytest.raises(InvalidInputError):
        DiagonalPolynomial(k, coefficients)


@pytest.mark.parametrize(
    "poly, text",
    [
        (DiagonalPolynomial(2, (1, 1)), "x^2+y^2"),
        (DiagonalPolynomial(2, (1, -1)), "x^2-y^2"),
        (DiagonalPolynomial(3, (2, -5)), "2x^3-5y^3"),
        (DiagonalPolynomial(1, (1, 1)), "x+y"),
        (DiagonalPolynomial(2, (-1, 1, 1, 1, 1)), "-x1^2+x2^2+x3^2+x4^2+x5^2"),
    ],
)
def test_diagonal_render(poly, text):
    assert poly.render() == text
    assert str(poly) == text


def test_variable_names():
    assert variable_names(3) == ("x", "y", "z")
    assert variable_names(5) == ("x1", "x2", "x3", "x4", "x5")


def test_evaluate_with_and_without_modulus():
    f = DiagonalPolynomial(2, (1, 1))
    assert f.evaluate((3, 4)) == 25
    assert f.evaluate((3, 4), 7) == 4
    assert DiagonalPolynomial(2, (1, -1)).evaluate((0, 1), 8) == 7
    with pytest.raises(InvalidInputError):
        f.evaluate((1,))


def test_plus_minus_squares():
    assert DiagonalPolynomial(2, (1, -1, -1)).is_plus_minus_squares()
    assert not DiagonalPolynomial(2, (2, 1)).is_plus_minus_squares()
    assert not DiagonalPolynomial(3, (1, 1)).is_plus_minus_squares()


def test_general_and_diagonal_conversions():
    f = DiagonalPolynomial(3, (2, -1, 4))
    general = f.as_general()
    assert general.terms == ((2, (3, 0, 0)), (-1, (0, 3, 0)), (4, (0, 0, 3)))
    assert general.as_diagonal() == f
    for values in [(0, 0, 0), (1, 2, 3), (5, 6, 7)]:
        assert general.evaluate(values, 11) == f.evaluate(values, 11)


def test_as_diagonal_rejects_mixed_shapes():
    assert GeneralPolynomial(2, ((1, (1, 1)),)).as_diagonal() is None
    assert GeneralPolynomial(2, ((1, (2, 0)), (1, (0, 3)))).as_diagonal() is None
    assert GeneralPolynomial(2, ((1, (2, 0)),)).as_diagonal() is None


def test_general_render_and_evaluate():
    f = GeneralPolynomial(2, ((1, (1, 1)), (-3, (0, 0))))
    assert f.render() == "x*y-3"
    assert f.evaluate((2, 5)) == 7
    assert f.evaluate((2, 5), 4) == 3
    assert GeneralPolynomial(1, ((1, (2,)), (1, (1,)))).render() == "x^2+x"


@pytest.mark.parametrize(
    "variables, terms",
    [
        (0, ()),
        (1, ((0, (1,)),)),
        (2, ((1, (1,)),)),
        (1, ((1, (-1,)),)),
        (1, ((1, (2,)), (3, (2,)))),
    ],
)
def test_general_validation(variables, terms):
    with pytest.raises(InvalidInputError):
        GeneralPolynomial(variables, terms)
