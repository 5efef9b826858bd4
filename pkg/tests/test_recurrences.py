from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from loopinv.algebra import MultiPoly, RatFunc, UniPoly, parse_poly
from loopinv.ore import OreOperator, lclm
from loopinv.recurrences import (
    CFINITE,
    EXTENDED,
    HYPERGEOMETRIC,
    UNSOLVABLE,
    ClosedForm,
    FactorialFactor,
    HypergeometricTerm,
    Recurrence,
    assemble_closed_form,
    falling_factorial,
    gp_normal_form,
    hg_similar,
    homogenize,
    hypergeometric_solution_space,
    initial_value_system,
    normalize_factorials,
    petkovsek_hyper_solutions,
    polynomial_solutions,
    solve_cfinite,
    term_from_ratio,
)

x = UniPoly.x()
S = OreOperator.S()
MIXED_OP = OreOperator([-6 * (x + 1) * (x + 2), -5 * (x + 2), 1])


def unroll(op: OreOperator, init, count, start=0, rhs=None):
    """Reference unroller, independent of Recurrence.values."""
    op = op.monic()
    d = op.order
    vals = [Fraction(v) for v in init[:d]]
    while len(vals) < count:
        n = start + len(vals) - d
        acc = Fraction(rhs(n)) if rhs else Fraction(0)
        for i in range(d):
            acc -= op.coeffs[i](n) * vals[n - start + i]
        vals.append(acc)
    return vals


def annihilates(op: OreOperator, term, points):
    bad = set(op.integer_singularities())
    seq = op.apply(term)
    pts = [n for n in points if not any(n + k in bad for k in range(op.order + 1))]
    return bool(pts) and all(seq(n) == 0 for n in pts)


class TestFactorials:
    def test_falling_factorial(self):
        assert falling_factorial(Fraction(0), 5) == 120
        assert falling_factorial(Fraction(1, 2), 2) == Fraction(3, 2) * Fraction(5, 2)

    def test_normalize_shifts_to_representative(self):
        factors, corr = normalize_factorials([(Fraction(2), 1)])
        assert factors == [FactorialFactor(Fraction(0), 1)]
        for n in range(6):
            assert falling_factorial(Fraction(2), n) == corr(n) * factorial(n)

    def test_normalize_rejects_vanishing(self):
        with pytest.raises(ValueError):
            normalize_factorials([(Fraction(-3), 1)])


class TestGosperPetkovsekForm:
    @pytest.mark.parametrize("num,den", [
        ((x + 1) * (x + 3), (x + 2) * x),
        ((x + 5) * (2 * x + 1), x * (x + 1) * (x + 2)),
        (UniPoly((3,)) * (x + Fraction(1, 2)), x + 4),
    ])
    def test_form_reconstructs_and_is_coprime(self, num, den):
        r = RatFunc(num, den)
        z, a, b, c = gp_normal_form(r)
        assert RatFunc(a * c.shift(1), b * c) * z == r
        for h in range(0, 12):
            assert sympy.gcd(sympy.Poly(list(reversed(a.coeffs)), sympy.Symbol("x")),
                             sympy.Poly(list(reversed(b.shift(h).coeffs)), sympy.Symbol("x"))).degree() < 1

    def test_term_from_ratio(self):
        t = term_from_ratio(RatFunc(2 * (x + 1)))
        assert t.theta == 2 and t.factors == (FactorialFactor(Fraction(0), 1),)
        assert [t(n) for n in range(5)] == [2**n * factorial(n) for n in range(5)]
        q = RatFunc((x + 3) * (x + 1), (x + 2) * 1)
        t = term_from_ratio(q)
        assert t.shift_quotient() == q
        assert term_from_ratio(RatFunc(x**2 + 1, x**2 + 3)) is None
        t = term_from_ratio(RatFunc((x + 1) ** 2 + 1, x**2 + 1))
        assert t is not None and t.shift_quotient() == RatFunc((x + 1) ** 2 + 1, x**2 + 1)

    def test_similarity(self):
        a = HypergeometricTerm(2, RatFunc(x + 1), (FactorialFactor(Fraction(0), 1),))
        b = HypergeometricTerm(2, RatFunc(1), (FactorialFactor(Fraction(0), 1),))
        assert hg_similar(a, b) == RatFunc(x + 1)
        assert hg_similar(a, HypergeometricTerm(3, RatFunc(1))) is None


class TestPetkovsek:
    def test_example_operator(self):
        hs = petkovsek_hyper_solutions(MIXED_OP)
        assert sorted(str(h) for h in hs) == ["(-1)^n*n!", "6^n*n!"]

    def test_initial_value_system(self):
        rec = Recurrence(MIXED_OP, "a", (parse_poly("a_0"), parse_poly("a_1")))
        eqs = initial_value_system(rec, sorted(petkovsek_hyper_solutions(MIXED_OP), key=str), ["k1", "k2"])
        assert [(n, str(l), str(r)) for n, l, r in eqs] == [(0, "k1 + k2", "a_0"), (1, "-k1 + 6*k2", "a_1")]

    def test_factorial_and_fibonacci(self):
        hs = petkovsek_hyper_solutions(S - OreOperator([x + 1]))
        assert [str(h) for h in hs] == ["n!"]
        assert petkovsek_hyper_solutions(OreOperator([-1, -1, 1])) == []

    def test_polynomial_solutions(self):
        # (x+1) y(x+1) - x y(x) = 1 has y = 1
        Q = [-x, x + 1]
        sols = polynomial_solutions(Q)
        assert all(p.degree <= 20 for p in sols)
        # homogeneous: y(x+1) - y(x) = 0 -> constants only
        assert [p.degree for p in polynomial_solutions([UniPoly((-1,)), UniPoly((1,))])] == [0]

    @given(st.lists(st.tuples(st.integers(-3, 3).filter(bool), st.integers(1, 4), st.integers(1, 4)),
                    min_size=1, max_size=2, unique_by=lambda t: t[0]))
    @settings(max_examples=25, deadline=None)
    def test_lclm_of_first_order_factors(self, specs):
        ratios = [RatFunc(UniPoly((a, 1)) * th, UniPoly((b, 1))) for th, a, b in specs]
        L = OreOperator((1,))
        for r in ratios:
            L = lclm(L, OreOperator.first_order(r)) if L.order else OreOperator.first_order(r)
        classes = hypergeometric_solution_space(L)
        assert sum(c.dimension for c in classes) == L.order
        for t in petkovsek_hyper_solutions(L):
            assert annihilates(L, t, range(5, 25))

    @pytest.mark.parametrize("coeffs", [
        lambda n: [-6 * (n + 1) * (n + 2), -5 * (n + 2), 1],
        lambda n: [2 * (n + 1), -(n + 3), 1],
    ])
    def test_spans_sympy_solutions(self, coeffs):
        n = sympy.Symbol("n", integer=True)
        cs = coeffs(n)
        op = OreOperator([UniPoly([Fraction(str(c)) for c in reversed(sympy.Poly(ci, n).all_coeffs())]) for ci in cs])
        ours = petkovsek_hyper_solutions(op)
        theirs = sympy.solvers.recurr.rsolve_hyper(cs, 0, n)
        consts = sorted(theirs.free_symbols - {n}, key=str)
        assert len(ours) == len(consts) >= 1
        for c in consts:
            g = sympy.expand(theirs).coeff(c)
            rows = [[h(k) for h in ours] + [Fraction(str(sympy.nsimplify(g.subs(n, k))))] for k in range(2, 9)]
            assert sympy.Matrix(rows).rank() == len(ours)


class TestSolve:
    @given(st.lists(st.tuples(st.fractions(min_value=-5, max_value=5, max_denominator=3).filter(bool),
                              st.integers(1, 2)), min_size=1, max_size=3, unique_by=lambda t: t[0]),
           st.lists(st.integers(-9, 9), min_size=6, max_size=6))
    @settings(max_examples=40, deadline=None)
    def test_cfinite_matches_unrolling(self, roots, init):
        chi = UniPoly((1,))
        for r, m in roots:
            chi = chi * UniPoly((-r, 1)) ** m
        op = OreOperator(list(chi.coeffs))
        d = op.order
        rec = Recurrence(op, "v", tuple(init[:d]))
        cf = solve_cfinite(rec)
        want = unroll(op, init, 25)
        assert [cf.evaluate(n) for n in range(25)] == want

    def test_fibonacci_is_unsolvable(self):
        rep = assemble_closed_form(Recurrence(OreOperator([-1, -1, 1]), "f", (0, 1)))
        assert rep.status == UNSOLVABLE and rep.reason == "NonRationalEigenvalue"
        assert "t^2 - t - 1" in rep.detail

    def test_hypergeometric_symbolic(self):
        rec = Recurrence(MIXED_OP, "a", (parse_poly("a_0"), parse_poly("a_1")))
        rep = assemble_closed_form(rec)
        assert rep.status == EXTENDED
        for a0, a1 in ((2, 5), (Fraction(1, 3), -4)):
            want = unroll(MIXED_OP, [a0, a1], 12)
            assert [rep.closed_form.evaluate(n, {"a_0": a0, "a_1": a1}) for n in range(12)] == want
        assert rep.closed_form.evaluate(3, {"a_0": 2, "a_1": 5}) == 1290

    def test_inhomogeneous(self):
        rec = Recurrence(OreOperator([3, 1]), "c", (parse_poly("c_0"),), inhomogeneous=2)
        rep = assemble_closed_form(rec)
        assert rep.status == CFINITE
        assert str(rep.closed_form) == "(c_0 - 1/2)*(-3)^n + 1/2"
        h = homogenize(Recurrence(OreOperator([-1, 1]), "v", (0,), inhomogeneous=parse_poly("n")))
        assert h.order == 3 and h.is_homogeneous

    def test_single_factorial_is_hypergeometric(self):
        rep = assemble_closed_form(Recurrence(OreOperator([-(x + 1), 1]), "f", (parse_poly("f_0"),)))
        assert rep.status == HYPERGEOMETRIC and str(rep.closed_form) == "f_0*n!"

    def test_pole_moves_offset(self):
        rep = assemble_closed_form(Recurrence(OreOperator([-(x - 2), 1]), "v", (parse_poly("v_0"),)))
        assert rep.ok and rep.closed_form.offset == 3
        assert not rep.closed_form.summands

    def test_inverse_factorial(self):
        rep = assemble_closed_form(Recurrence(OreOperator([-RatFunc(1, x + 1), 1]), "v", (1,)))
        assert [rep.closed_form.evaluate(n) for n in range(6)] == [Fraction(1, factorial(n)) for n in range(6)]

    def test_half_integer_factorial(self):
        rep = assemble_closed_form(Recurrence(OreOperator([-(2 * x + 1), 1]), "h", (1,)))
        want = unroll(OreOperator([-(2 * x + 1), 1]), [1], 10)
        assert [rep.closed_form.evaluate(n) for n in range(10)] == want
        assert rep.closed_form.zetas == [Fraction(1, 2)]

    def test_shift_of_closed_form(self):
        cf = assemble_closed_form(Recurrence(MIXED_OP, "a", (2, 5))).closed_form
        sh = cf.shift(2)
        assert sh.offset == 2
        assert all(sh.evaluate(n) == cf.evaluate(n - 2) for n in range(2, 10))

    def test_as_fraction(self):
        cf = assemble_closed_form(Recurrence(OreOperator([-RatFunc(1, x + 1), 1]), "v", (1,))).closed_form
        f, g = cf.as_fraction({}, {Fraction(0): "h_0"})
        assert f == MultiPoly.const(1) and g == parse_poly("h_0")

    def test_closed_form_dimension_shortfall(self):
        # x y(n+2) - (n^2+1) y(n) ... has no hypergeometric basis
        op = OreOperator([-(x**2 + 1), 0, x + 1])
        rep = assemble_closed_form(Recurrence(op, "y", (1, 1)))
        assert rep.status == UNSOLVABLE and rep.reason == "NoHypergeometricBasis"
