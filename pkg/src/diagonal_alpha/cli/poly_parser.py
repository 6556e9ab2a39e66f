"""
Polynomial expression parser.

Grammar (whitespace is ignored, ASCII only):

    expression := ['-'] term (('+' | '-') term)*
    term       := [integer ['*']] factor ('*' factor)*
    factor     := variable ['^' integer]
    variable   := letter digit*

Each variable belongs to exactly one term. When every term is a single
variable raised to one shared power the result is a DiagonalPolynomial,
otherwise a GeneralPolynomial.
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from ..errors import PolynomialSyntaxError
from ..oracle.polynomials import DiagonalPolynomial, GeneralPolynomial, PolynomialFamily

TOKEN_PATTERN = re.compile(
    r"(?P<number>\d+)|(?P<variable>[A-Za-z][0-9]*)|(?P<op>[-+*^])|(?P<space>\s+)|(?P<bad>.)"
)


@dataclass(frozen=True)
class PolySpec:
    """A parsed polynomial with its source text and recognized family."""
    source: str
    parsed: Union[DiagonalPolynomial, GeneralPolynomial]
    family: Optional[PolynomialFamily]
    variables: Tuple[str, ...]

    def render(self) -> str:
        return self.parsed.render()


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    for match in TOKEN_PATTERN.finditer(text):
        kind = match.lastgroup
        if kind == "space":
            continue
        if kind == "bad" or not match.group().isascii():
            raise PolynomialSyntaxError(f"unexpected character {match.group()!r}", match.start())
        tokens.append(_Token(kind, match.group(), match.start()))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0
        self.variables: Dict[str, int] = {}

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def position(self) -> int:
        token = self.peek()
        return token.position if token else len(self.text)

    def take(self, kind: str, text: Optional[str] = None) -> Optional[_Token]:
        token = self.peek()
        if token and token.kind == kind and (text is None or token.text == text):
            self.index += 1
            return token
        return None

    def expect(self, kind: str, what: str) -> _Token:
        token = self.take(kind)
        if token is None:
            found = repr(self.peek().text) if self.peek() else "end of input"
            raise PolynomialSyntaxError(f"expected {what}, found {found}", self.position())
        return token

    def parse(self) -> List[Tuple[int, Dict[int, int], int]]:
        if not self.tokens:
            raise PolynomialSyntaxError("empty expression", 0)
        terms = []
        sign = -1 if self.take("op", "-") else 1
        while True:
            terms.append(self.term(sign))
            operator = self.take("op", "+") or self.take("op", "-")
            if operator is None:
                break
            sign = -1 if operator.text == "-" else 1
        if self.peek() is not None:
            raise PolynomialSyntaxError(f"unexpected {self.peek().text!r}", self.position())
        return terms

    def term(self, sign: int) -> Tuple[int, Dict[int, int], int]:
        start = self.position()
        coefficient = 1
        number = self.take("number")
        if number is not None:
            coefficient = int(number.text)
            self.take("op", "*")
        coefficient *= sign
        if coefficient == 0:
            raise PolynomialSyntaxError("zero coefficient", start)

        powers: Dict[int, int] = {}
        while True:
            self.factor(powers)
            if not self.take("op", "*"):
                break
        return coefficient, powers, start

    def factor(self, powers: Dict[int, int]) -> None:
        variable = self.expect("variable", "a variable")
        if variable.text in self.variables:
            raise PolynomialSyntaxError(f"repeated variable {variable.text!r}", variable.position)
        self.variables[variable.text] = len(self.variables)
        exponent = 1
        if self.take("op", "^"):
            token = self.expect("number", "an exponent")
            exponent = int(token.text)
            if exponent < 1:
                raise PolynomialSyntaxError("exponent must be >= 1", token.position)
        powers[self.variables[variable.text]] = exponent


def parse_poly(text: str) -> PolySpec:
    """
    Parse an expression such as "x^2+y^2" or "3x^3 - 2y^3".

    Raises PolynomialSyntaxError (with a character position) on malformed input,
    repeated variables and zero coefficients.
    """
    parser = _Parser(text)
    terms = parser.parse()
    t = len(parser.variables)
    names = tuple(sorted(parser.variables, key=parser.variables.get))

    single = all(len(powers) == 1 for _, powers, _ in terms)
    degrees = {e for _, powers, _ in terms for e in powers.values()}
    if single and len(degrees) == 1:
        coefficients = [0] * t
        for coefficient, powers, _ in terms:
            (slot,) = powers
            coefficients[slot] = coefficient
        polynomial = DiagonalPolynomial(degrees.pop(), tuple(coefficients))
        return PolySpec(text, polynomial, polynomial.family, names)

    general_terms = []
    for coefficient, powers, _ in terms:
        general_terms.append((coefficient, tuple(powers.get(i, 0) for i in range(t))))
    return PolySpec(text, GeneralPolynomial(t, tuple(general_terms)), None, names)


def render(polynomial: Union[PolySpec, DiagonalPolynomial, GeneralPolynomial]) -> str:
    """Canonical text form; parsing it gives back an equal polynomial."""
    return polynomial.render()
