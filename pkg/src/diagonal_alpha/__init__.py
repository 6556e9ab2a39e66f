"""
Diagonal Alpha Package

Computes, for polynomials c1*x1^k + ... + ct*xt^k, the set A_n of residues a for
which f = a (mod n) is solvable, its size alpha(n), the N-sets of prime powers and
surjectivity of f on Z_n. Three independent routes are provided (brute-force
oracle, N-set recurrences, closed forms) and they are cross-checked against each
other.
"""

from .oracle.polynomials import DiagonalPolynomial, GeneralPolynomial, PolynomialFamily
from .residues.residue_set import ResidueSet
from .engine.alpha_engine import alpha, is_surjective

__version__ = "0.1.0"

__all__ = [
    "DiagonalPolynomial",
    "GeneralPolynomial",
    "PolynomialFamily",
    "ResidueSet",
    "alpha",
    "is_surjective",
]
