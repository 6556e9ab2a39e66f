"""
Method-against-method verification of alpha over a range of moduli.

For every n the multiplicative assembly is compared with the direct oracle;
at prime powers every applicable route (closed form, periodic recurrence and
its explicit solution, oracle recurrence, oracle) is compared pairwise; and the
surjectivity rule, where one exists, is compared with alpha(n) == n.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from ..arithmetic.integer_arith import factorize
from ..errors import PreconditionError
from ..oracle.brute_force import Polynomial, alpha_oracle
from ..oracle.polynomials import DiagonalPolynomial
from .alpha_engine import AlphaCalculator, surjectivity_rule
from .prime_power import (
    PrimePowerContext,
    alpha_closed,
    alpha_nr_recurrence,
    alpha_oracle_recurrence,
    corollary_explicit,
    has_closed_form,
    profile_fits,
    require_exponent,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MethodDisagreement:
    n: int
    first_method: str
    first: object
    second_method: str
    second: object

    def describe(self) -> str:
        return f"n={self.n}: {self.first_method}={self.first} but {self.second_method}={self.second}"


@dataclass
class VerificationReport:
    max_n: int
    checks: int = 0
    disagreements: List[MethodDisagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    @property
    def first(self) -> Optional[MethodDisagreement]:
        return self.disagreements[0] if self.disagreements else None


def prime_power_values(f: Polynomial, p: int, e: int, calculator: AlphaCalculator) -> Dict[str, int]:
    """alpha(p^e) by every route that applies to f at p."""
    values = {
        "oracle": alpha_oracle(f, p**e),
        "oracle-recurrence": alpha_oracle_recurrence(f, p, e).value,
    }
    if not isinstance(f, DiagonalPolynomial):
        return values
    if has_closed_form(f, p):
        values["closed-form"] = alpha_closed(f.family, p, e, f.k).value
    if e < 2 or not profile_fits(f, p):
        return values
    try:
        require_exponent(f, p)
    except PreconditionError:
        return values
    profile = calculator.profile(f, p)
    alpha_p = alpha_oracle(f, p)
    values["nr-recurrence"] = alpha_nr_recurrence(f, p, e, profile=profile, alpha_p=alpha_p).value
    values["corollary"] = corollary_explicit(PrimePowerContext.build(p, e, f.k), alpha_p, profile.base_sizes)
    return values


def check_modulus(f: Polynomial, n: int, calculator: AlphaCalculator) -> Tuple[int, List[MethodDisagreement]]:
    """Every comparison at a single n; returns (number of comparisons, disagreements)."""
    found = []
    checks = 1
    assembled = calculator.alpha(f, n)
    direct = alpha_oracle(f, n)
    if assembled.value != direct:
        found.append(MethodDisagreement(n, assembled.method.value, assembled.value, "oracle", direct))

    factors = factorize(n)
    if len(factors) == 1:
        ((p, e),) = factors
        values = prime_power_values(f, p, e, calculator)
        for (first_method, first), (second_method, second) in combinations(sorted(values.items()), 2):
            checks += 1
            if first != second:
                found.append(MethodDisagreement(n, first_method, first, second_method, second))

    rule = surjectivity_rule(f, n)
    if rule is not None:
        checks += 1
        if rule != (direct == n):
            found.append(MethodDisagreement(n, "surjectivity-rule", rule, "oracle-surjective", direct == n))
    return checks, found


def verify_up_to(
    f: Polynomial,
    max_n: int,
    calculator: Optional[AlphaCalculator] = None,
    show_progress: bool = False,
    stop_at_first: bool = True,
) -> VerificationReport:
    """
    Run check_modulus for n = 1..max_n.

    Args:
        f: Polynomial under test
        max_n: Largest modulus
        calculator: Shared memo (a fresh one when omitted)
        show_progress: Show a tqdm bar on stderr
        stop_at_first: Stop at the first n with a disagreement

    Returns:
        VerificationReport with the number of comparisons and the disagreements
    """
    calculator = calculator or AlphaCalculator()
    report = VerificationReport(max_n)
    for n in tqdm(range(1, max_n + 1), desc=f"verify {f}", disable=not show_progress, leave=False):
        checks, found = check_modulus(f, n, calculator)
        report.checks += checks
        if found:
            for disagreement in found:
                logger.error("method disagreement for %s: %s", f, disagreement.describe())
            report.disagreements.extend(found)
            if stop_at_first:
                break
    return report
