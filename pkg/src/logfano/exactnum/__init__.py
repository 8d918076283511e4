"""Exact rationals, polynomials, real algebraic numbers and piecewise polynomials."""

from .algreal import AlgReal, combine, isolate_roots, poly_at, sum_of_values, to_alg
from .piecewise import DomainError, PiecewisePoly, piecewise_integrate, poly_integrate, sign_of
from .poly import Poly, count_roots, cauchy_bound, poly_gcd, squarefree, sturm_sequence
from .rational import Rat, as_rat, rat_str

__all__ = [
    "AlgReal", "DomainError", "PiecewisePoly", "Poly", "Rat", "as_rat", "cauchy_bound",
    "combine", "count_roots", "isolate_roots", "piecewise_integrate", "poly_at", "poly_gcd",
    "poly_integrate", "rat_str", "sign_of", "squarefree", "sturm_sequence", "sum_of_values", "to_alg",
]
