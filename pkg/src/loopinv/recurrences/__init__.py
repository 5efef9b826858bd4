"""Closed-form solving of linear recurrences: C-finite and hypergeometric."""

from .closed_form import (
    ClosedForm,
    FactorialFactor,
    HypergeometricTerm,
    Summand,
    eval_closed_form,
    falling_factorial,
    normalize_factorials,
)
from .hyper import (
    DEFAULT_DEGREE_CAP,
    SolutionClass,
    gp_normal_form,
    hg_similar,
    hypergeometric_solution_space,
    petkovsek_hyper_solutions,
    polynomial_solutions,
    term_from_ratio,
)
from .solve import (
    CFINITE,
    EXTENDED,
    HYPERGEOMETRIC,
    UNSOLVABLE,
    Recurrence,
    SolverReport,
    assemble_closed_form,
    homogenize,
    initial_value_system,
    solve_cfinite,
    strip_trailing_zeros,
)

__all__ = [
    "ClosedForm",
    "FactorialFactor",
    "HypergeometricTerm",
    "Summand",
    "eval_closed_form",
    "falling_factorial",
    "normalize_factorials",
    "DEFAULT_DEGREE_CAP",
    "SolutionClass",
    "gp_normal_form",
    "hg_similar",
    "hypergeometric_solution_space",
    "petkovsek_hyper_solutions",
    "polynomial_solutions",
    "term_from_ratio",
    "CFINITE",
    "EXTENDED",
    "HYPERGEOMETRIC",
    "UNSOLVABLE",
    "Recurrence",
    "SolverReport",
    "assemble_closed_form",
    "homogenize",
    "initial_value_system",
    "solve_cfinite",
    "strip_trailing_zeros",
]
