"""Hypothesis strategies shared by the property suites."""

from fractions import Fraction

from hypothesis import strategies as st

from loopinv.algebra import UniPoly
from loopinv.ore import OreOperator

coeff_ints = st.integers(-4, 4)


@st.composite
def unipoly(draw, max_deg=2, nonzero=False):
    cs = [draw(coeff_ints) for _ in range(draw(st.integers(0, max_deg)) + 1)]
    p = UniPoly(cs)
    if nonzero and not p:
        p = UniPoly((draw(st.integers(1, 4)),))
    return p


@st.composite
def ore_operator(draw, max_order=4, max_deg=2):
    order = draw(st.integers(0, max_order))
    cs = [draw(unipoly(max_deg)) for _ in range(order)]
    cs.append(draw(unipoly(max_deg, nonzero=True)))
    return OreOperator(cs)


@st.composite
def factored_pair(draw, max_order=4):
    """Two operators of order <= max_order sharing a random right factor."""
    g = draw(ore_operator(max_order=2, max_deg=1))
    budget = max_order - g.order
    a = draw(ore_operator(max_order=budget, max_deg=1)) * g
    b = draw(ore_operator(max_order=budget, max_deg=1)) * g
    return a, b, g


rational_theta = st.fractions(min_value=-12, max_value=12, max_denominator=6).filter(lambda t: t != 0)


def sample_sequence(seed: int):
    def t(n: int) -> Fraction:
        return Fraction((seed * 7 + 3 * n * n - n) % 23 - 11, 1 + (n + seed) % 5)

    return t


GB_VARS = ("x", "y", "z")


@st.composite
def small_system(draw, nvars=None, max_deg=3, max_gens=3, max_terms=3):
    """Random polynomial systems in at most three variables and degree <= max_deg."""
    from loopinv.algebra import MultiPoly

    k = nvars or draw(st.integers(1, 3))
    names = GB_VARS[:k]
    gens = []
    for _ in range(draw(st.integers(1, max_gens))):
        terms = {}
        for _ in range(draw(st.integers(1, max_terms))):
            d = draw(st.integers(0, max_deg))
            exp = [0] * k
            for _ in range(d):
                exp[draw(st.integers(0, k - 1))] += 1
            terms[tuple(exp)] = Fraction(draw(st.integers(-3, 3)))
        p = MultiPoly(names, terms)
        if p:
            gens.append(p)
    if not gens:
        gens.append(MultiPoly.var(names[0]))
    return names, gens
