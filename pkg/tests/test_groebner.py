import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from loopinv.algebra import MultiPoly, parse_poly
from loopinv.errors import ResourceLimitExceeded
from loopinv.ideals import (
    IdealBasis,
    MonomialOrder,
    buchberger,
    eliminate,
    normal_form,
    reduce_basis,
    spolys_reduce_to_zero,
)

from conftest import from_sympy, to_sympy
from strategies import small_system


def sympy_gb(gens, names, order):
    syms = sympy.symbols(names)
    G = sympy.groebner([to_sympy(g) for g in gens], *syms, order=order, domain="QQ")
    return sorted(str(from_sympy(g.as_expr())) for g in G.exprs)


def monic_strings(basis: IdealBasis):
    return sorted(str(g) for g in basis.generators)


def test_monomial_orders():
    gl = MonomialOrder.grevlex(["x", "y", "z"])
    assert gl.key((2, 0, 0)) > gl.key((1, 1, 0)) > gl.key((0, 2, 0))
    assert gl.key((0, 0, 2)) < gl.key((1, 1, 0))
    lex = MonomialOrder.lex(["x", "y"])
    assert lex.key((1, 0)) > lex.key((0, 5))
    blk = MonomialOrder.block(["t"], ["x", "y"])
    assert blk.key((1, 0, 0)) > blk.key((0, 7, 7))
    assert blk.eliminated == ("t",) and blk.kept == ("x", "y")


def test_textbook_example():
    gens = [parse_poly("x^2*y - 1"), parse_poly("x*y^2 - x")]
    G = buchberger(gens, MonomialOrder.grevlex(["x", "y"]))
    assert monic_strings(G) == ["x^2 - y", "y^2 - 1"]
    assert spolys_reduce_to_zero(G)
    assert G.contains(parse_poly("x^2*y - 1")) and not G.contains(parse_poly("x"))


def test_elimination_of_parametrisation():
    t = "t"
    gens = [parse_poly("v1 - t^2"), parse_poly("v2 - t^3")]
    E = eliminate(gens, [t])
    assert [str(g) for g in E] == ["v1^3 - v2^2"]
    assert E.order == MonomialOrder.grevlex(["v1", "v2"])


def test_normal_form_with_outside_variables():
    G = buchberger([parse_poly("x - 1")], MonomialOrder.grevlex(["x"]))
    assert normal_form(parse_poly("x*a + b"), G) == parse_poly("a + b")


def test_unit_ideal_and_zero():
    G = buchberger([parse_poly("x"), parse_poly("x + 1")], MonomialOrder.grevlex(["x"]))
    assert [str(g) for g in G] == ["1"]
    assert buchberger([], MonomialOrder.grevlex(["x"])).is_zero


def test_step_cap():
    gens = [parse_poly("x^3*y - z^2 + 1"), parse_poly("y^3*z - x^2 + 2"), parse_poly("z^3*x - y^2 + 3")]
    with pytest.raises(ResourceLimitExceeded):
        buchberger(gens, MonomialOrder.lex(["x", "y", "z"]), step_cap=3)


def test_reduce_basis_is_idempotent():
    gens = [parse_poly("x^2 + y"), parse_poly("x*y - 1")]
    G = buchberger(gens, MonomialOrder.grevlex(["x", "y"]), reduced=False)
    R = reduce_basis(G)
    assert R.reduced and reduce_basis(R) is R
    assert monic_strings(R) == monic_strings(buchberger(gens, G.order))


@given(small_system(max_deg=2))
@settings(max_examples=30, deadline=None)
def test_reduced_grevlex_matches_sympy(system):
    names, gens = system
    G = buchberger(gens, MonomialOrder.grevlex(names), step_cap=5000)
    assert monic_strings(G) == sympy_gb(gens, names, "grevlex")


@given(small_system(max_deg=2, max_gens=2))
@settings(max_examples=20, deadline=None)
def test_reduced_lex_matches_sympy(system):
    names, gens = system
    G = buchberger(gens, MonomialOrder.lex(names), step_cap=5000)
    assert monic_strings(G) == sympy_gb(gens, names, "lex")


@given(small_system(max_deg=3), st.randoms(use_true_random=False))
@settings(max_examples=20, deadline=None)
def test_postcondition_and_permutation_invariance(system, rnd):
    names, gens = system
    order = MonomialOrder.grevlex(names)
    G = buchberger(gens, order, step_cap=5000)
    assert spolys_reduce_to_zero(G)
    assert all(not normal_form(g, G) for g in gens)
    perm = list(gens)
    rnd.shuffle(perm)
    assert monic_strings(buchberger(perm, order, step_cap=5000)) == monic_strings(G)


def test_nonreduced_basis_is_still_groebner():
    gens = [parse_poly("x^2 - y"), parse_poly("x^3 - z")]
    G = buchberger(gens, MonomialOrder.lex(["x", "y", "z"]), reduced=False)
    assert spolys_reduce_to_zero(G)
    assert not G.reduced
