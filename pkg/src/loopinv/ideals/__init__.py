"""Groebner bases, exponent lattices and ideals of algebraic relations."""

from .groebner import (
    DEFAULT_STEP_CAP,
    IdealBasis,
    MonomialOrder,
    buchberger,
    eliminate,
    normal_form,
    reduce_basis,
    spolys_reduce_to_zero,
)
from .lattice import ExponentLattice, evar_name, exp_lattice, hermite_rows, integer_kernel, lattice_ideal
from .relations import algebraic_relations, hvar_name, invariant_ideal, prune_redundant, relation_system

__all__ = [
    "DEFAULT_STEP_CAP",
    "IdealBasis",
    "MonomialOrder",
    "buchberger",
    "eliminate",
    "normal_form",
    "reduce_basis",
    "spolys_reduce_to_zero",
    "ExponentLattice",
    "evar_name",
    "exp_lattice",
    "hermite_rows",
    "integer_kernel",
    "lattice_ideal",
    "algebraic_relations",
    "hvar_name",
    "invariant_ideal",
    "prune_redundant",
    "relation_system",
]
