"""
Polynomial value types: diagonal forms c1*x1^k + ... + ct*xt^k, general
polynomials given by monomial terms, witnesses, and the named families the
closed forms are known for.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

from ..errors import InvalidInputError


class PolynomialFamily(str, Enum):
    """Named polynomials with closed forms, digit rules or exponent claims."""
    SUM_OF_TWO_SQUARES = "x^2+y^2"
    DIFFERENCE_OF_SQUARES = "x^2-y^2"
    SUM_OF_THREE_SQUARES = "x^2+y^2+z^2"
    POWER = "x^k"

    @property
    def degree(self) -> Optional[int]:
        """Fixed degree of the family; None for x^k."""
        return None if self is PolynomialFamily.POWER else 2


_NAMED_COEFFICIENTS = {
    (1, 1): PolynomialFamily.SUM_OF_TWO_SQUARES,
    (-1, 1): PolynomialFamily.DIFFERENCE_OF_SQUARES,
    (1, 1, 1): PolynomialFamily.SUM_OF_THREE_SQUARES,
}


def variable_names(t: int) -> Tuple[str, ...]:
    """Canonical names used when rendering: x, y, z, w for t <= 4, else x1..xt."""
    if t <= 4:
        return ("x", "y", "z", "w")[:t]
    return tuple(f"x{i}" for i in range(1, t + 1))


def _render_term(coefficient: int, monomial: str, first: bool) -> str:
    sign = "-" if coefficient < 0 else ("" if first else "+")
    magnitude = abs(coefficient)
    if not monomial:
        return f"{sign}{magnitude}"
    prefix = "" if magnitude == 1 else str(magnitude)
    return f"{sign}{prefix}{monomial}"


@dataclass(frozen=True)
class DiagonalPolynomial:
    """c1*x1^k + c2*x2^k + ... + ct*xt^k with every ci nonzero."""
    k: int
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if self.k < 1:
            raise InvalidInputError(f"degree must be >= 1, got {self.k}")
        if not self.coefficients:
            raise InvalidInputError("a diagonal polynomial needs at least one term")
        if any(c == 0 for c in self.coefficients):
            raise InvalidInputError(f"coefficients must be nonzero, got {self.coefficients}")

    @classmethod
    def of_family(cls, family: PolynomialFamily, k: int = 2) -> "DiagonalPolynomial":
        if family is PolynomialFamily.POWER:
            return cls(k, (1,))
        for coefficients, named in _NAMED_COEFFICIENTS.items():
            if named is family:
                return cls(2, tuple(sorted(coefficients, reverse=True)))
        raise InvalidInputError(f"unknown family {family}")

    @property
    def t(self) -> int:
        return len(self.coefficients)

    @property
    def family(self) -> Optional[PolynomialFamily]:
        """The named family this form equals up to variable renaming, if any."""
        if self.t == 1 and self.coefficients[0] == 1:
            return PolynomialFamily.POWER
        if self.k != 2:
            return None
        return _NAMED_COEFFICIENTS.get(tuple(sorted(self.coefficients)))

    def is_plus_minus_squares(self) -> bool:
        """True for forms +-x1^2 +- ... +- xt^2."""
        return self.k == 2 and all(abs(c) == 1 for c in self.coefficients)

    def evaluate(self, values: Sequence[int], modulus: Optional[int] = None) -> int:
        if len(values) != self.t:
            raise InvalidInputError(f"expected {self.t} values, got {len(values)}")
        if modulus is None:
            return sum(c * v**self.k for c, v in zip(self.coefficients, values))
        return sum(c * pow(v, self.k, modulus) for c, v in zip(self.coefficients, values)) % modulus

    def as_general(self) -> "GeneralPolynomial":
        terms = []
        for i, c in enumerate(self.coefficients):
            exponents = [0] * self.t
            exponents[i] = self.k
            terms.append((c, tuple(exponents)))
        return GeneralPolynomial(self.t, tuple(terms))

    def render(self) -> str:
        names = variable_names(self.t)
        monomial = (lambda name: name) if self.k == 1 else (lambda name: f"{name}^{self.k}")
        return "".join(
            _render_term(c, monomial(name), i == 0)
            for i, (c, name) in enumerate(zip(self.coefficients, names))
        )

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class GeneralPolynomial:
    """Sum of coefficient * x1^e1 * ... * xt^et terms over t variables."""
    variables: int
    terms: Tuple[Tuple[int, Tuple[int, ...]], ...]

    def __post_init__(self):
        normalized = tuple((int(c), tuple(int(e) for e in exps)) for c, exps in self.terms)
        object.__setattr__(self, "terms", normalized)
        if self.variables < 1:
            raise InvalidInputError(f"need at least one variable, got {self.variables}")
        seen = set()
        for coefficient, exponents in normalized:
            if coefficient == 0:
                raise InvalidInputError("term coefficients must be nonzero")
            if len(exponents) != self.variables:
                raise InvalidInputError(f"exponent vector {exponents} does not have {self.variables} entries")
            if any(e < 0 for e in exponents):
                raise InvalidInputError(f"exponents must be >= 0, got {exponents}")
            if exponents in seen:
                raise InvalidInputError(f"duplicate monomial {exponents}")
            seen.add(exponents)

    @property
    def t(self) -> int:
        return self.variables

    def evaluate(self, values: Sequence[int], modulus: Optional[int] = None) -> int:
        if len(values) != self.variables:
            raise InvalidInputError(f"expected {self.variables} values, got {len(values)}")
        total = 0
        for coefficient, exponents in self.terms:
            term = coefficient
            for value, e in zip(values, exponents):
                term *= pow(value, e, modulus) if modulus is not None else value**e
            total += term
        return total % modulus if modulus is not None else total

    def as_diagonal(self) -> Optional[DiagonalPolynomial]:
        """The diagonal form when every term is a single variable to one shared power."""
        if len(self.terms) != self.variables:
            return None
        coefficients = [0] * self.variables
        degrees = set()
        for coefficient, exponents in self.terms:
            used = [i for i, e in enumerate(exponents) if e]
            if len(used) != 1:
                return None
            degrees.add(exponents[used[0]])
            coefficients[used[0]] = coefficient
        if len(degrees) != 1 or 0 in coefficients:
            return None
        return DiagonalPolynomial(degrees.pop(), tuple(coefficients))

    def render(self) -> str:
        if not self.terms:
            return "0"
        names = variable_names(self.variables)
        pieces = []
        for i, (coefficient, exponents) in enumerate(self.terms):
            factors = []
            for name, e in zip(names, exponents):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            pieces.append(_render_term(coefficient, "*".join(factors), i == 0))
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Witness:
    """An assignment in I_n^t at which the polynomial takes `value` mod n."""
    assignment: Tuple[int, ...]
    modulus: int
    value: int
