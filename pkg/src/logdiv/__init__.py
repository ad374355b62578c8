"""Exact symbolic computation for free divisors.

Given a reduced polynomial h with h(0) = 0 defining a free divisor germ at
the origin, this package computes a certified basis of logarithmic vector
fields, classifies the divisor (Euler homogeneity, Koszul / weakly Koszul /
strongly Koszul, linear Jacobian type, differential linear type), computes
the Bernstein-Sato polynomial by two independent routes, builds logarithmic
Spencer complexes, verifies the duality of D[s]h^q against D[s]h^{-q-1},
and tests the symmetry b(s) = +/- b(-s-2).

All arithmetic is exact over the rationals.
"""

from logdiv.context import VariableContext, lex_order, degrevlex_order, weighted_order, block_order
from logdiv.poly import MultiPoly, parse_poly, PolyParseError
from logdiv.groebner import Ideal, syzygies, krull_dimension, is_regular_sequence
from logdiv.budget import Budget, BudgetExceededError

__all__ = [
    "VariableContext",
    "MultiPoly",
    "parse_poly",
    "PolyParseError",
    "Ideal",
    "syzygies",
    "krull_dimension",
    "is_regular_sequence",
    "Budget",
    "BudgetExceededError",
    "lex_order",
    "degrevlex_order",
    "weighted_order",
    "block_order",
]

__version__ = "0.1.0"
