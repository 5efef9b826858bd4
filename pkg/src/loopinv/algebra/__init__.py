"""Exact scalar, polynomial and rational-function arithmetic over Q."""

from fractions import Fraction as Rational

from .linalg import LinearSolution, kernel, rank, rref, solve_linear_system
from .multipoly import MultiPoly, grevlex_key, parse_poly, var, variables
from .univariate import (
    RatFunc,
    UniPoly,
    dispersion_set,
    integer_roots,
    interpolate,
    linear_factor_split,
    rational_roots,
    resultant,
    uni_gcd,
    uni_lcm,
)
from .varids import VarId, VarKind, NameRegistry

__all__ = [
    "Rational",
    "MultiPoly",
    "UniPoly",
    "RatFunc",
    "VarId",
    "VarKind",
    "NameRegistry",
    "grevlex_key",
    "parse_poly",
    "var",
    "variables",
    "uni_gcd",
    "uni_lcm",
    "resultant",
    "rational_roots",
    "linear_factor_split",
    "integer_roots",
    "interpolate",
    "dispersion_set",
    "solve_linear_system",
    "LinearSolution",
    "kernel",
    "rank",
    "rref",
]


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Functional form of ``a + b``, ``a - b`` and ``a * b``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")
