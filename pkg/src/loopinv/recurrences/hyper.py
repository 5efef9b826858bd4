"""Hypergeometric solutions of linear recurrences with polynomial coefficients.

The search follows Petkovsek's algorithm: a candidate shift quotient is
``Z * a(x) c(x+1) / (b(x) c(x))`` with ``a | p_0``, ``b | p_d(x - d + 1)``,
``Z`` a rational root of a leading-coefficient polynomial, and ``c`` a
polynomial solution of an auxiliary recurrence.  Divisor enumeration uses the
rational linear factors; a residual without rational roots is treated as one
indivisible factor, so the search is complete whenever the coefficients split
over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Sequence

from ..algebra.linalg import kernel, rref
from ..algebra.univariate import (
    RatFunc,
    UniPoly,
    dispersion_set,
    linear_factor_split,
    rational_roots,
    uni_gcd,
    uni_lcm,
)
from ..ore import OreOperator, right_rem
from .closed_form import FactorialFactor, HypergeometricTerm, _shift_window, representative

DEFAULT_DEGREE_CAP = 20


def gp_normal_form(r: RatFunc) -> tuple[Fraction, UniPoly, UniPoly, UniPoly]:
    """Write ``r = z * a(x)/b(x) * c(x+1)/c(x)`` with monic ``a, b, c`` and
    ``gcd(a(x), b(x+h)) = 1`` for every integer ``h >= 0``."""
    if not r:
        raise ValueError("normal form of the zero function")
    z = r.num.lead / r.den.lead
    a, b = r.num.monic(), r.den.monic()
    c = UniPoly((1,))
    for h in dispersion_set(a, b):
        d = uni_gcd(a, b.shift(h))
        if d.degree < 1:
            continue
        a = a.exact_div(d)
        b = b.exact_div(d.shift(-h))
        for j in range(1, h + 1):
            c = c * d.shift(-j)
    return z, a, b, c.monic()


def hg_similar(h1: HypergeometricTerm, h2: HypergeometricTerm) -> RatFunc | None:
    """Rational ``r`` with ``h1 = r * h2``, or ``None`` when the terms are not similar."""
    if h1.signature != h2.signature:
        return None
    return h1.rat / h2.rat


def term_from_ratio(ratio: RatFunc) -> HypergeometricTerm | None:
    """A hypergeometric term with the given shift quotient.

    Linear factors of the quotient become falling factorials on class
    representatives; remaining factors must telescope under integer shifts.
    Returns ``None`` when they do not (the term then involves algebraic
    numbers outside the closed-form language).
    """
    if not ratio:
        return None
    z = ratio.num.lead
    num_lin, num_res = linear_factor_split(ratio.num)
    den_lin, den_res = linear_factor_split(ratio.den)
    rat = RatFunc(1)
    factors: dict[Fraction, int] = {}
    for sign, lin in ((1, num_lin), (-1, den_lin)):
        for beta, m in lin:
            # (x + beta) is the quotient of ffac(x + beta - 1)
            rep, j = representative(beta - 1)
            rat = rat * _shift_window(rep, j) ** (sign * m)
            factors[rep] = factors.get(rep, 0) + sign * m
    while num_res.degree >= 1 or den_res.degree >= 1:
        if num_res.degree < 1 or den_res.degree < 1:
            return None
        hs = [h for h in dispersion_set(num_res, den_res, nonnegative=False) if h]
        if not hs:
            return None
        h = hs[0]
        g = uni_gcd(num_res, den_res.shift(h))
        num_res = num_res.exact_div(g)
        den_res = den_res.exact_div(g.shift(-h))
        # g(x) / g(x - h) telescopes
        if h > 0:
            for j in range(1, h + 1):
                rat = rat * g.shift(-j)
        else:
            for j in range(-h):
                rat = rat / g.shift(j)
    fs = tuple(FactorialFactor(zeta, k) for zeta, k in factors.items() if k)
    return HypergeometricTerm(z, rat, fs)


def _monic_divisors(p: UniPoly) -> list[UniPoly]:
    lin, residual = linear_factor_split(p)
    choices = [range(m + 1) for _, m in lin]
    out = []
    tails = [UniPoly((1,))] + ([residual] if residual.degree >= 1 else [])
    for exps in product(*choices):
        base = UniPoly((1,))
        for (zeta, _), e in zip(lin, exps):
            base = base * UniPoly((zeta, 1)) ** e
        for t in tails:
            out.append(base * t)
    return out


def polynomial_solutions(Q: Sequence[UniPoly], degree_cap: int = DEFAULT_DEGREE_CAP) -> list[UniPoly]:
    """Basis of polynomials ``c`` with ``sum_i Q_i(x) c(x + i) = 0``.

    The degree bound comes from the difference form ``sum_k R_k(x) (Delta^k c)(x)``.
    """
    d = len(Q) - 1
    R = []
    for k in range(d + 1):
        acc = UniPoly(())
        for i in range(k, d + 1):
            acc = acc + Q[i] * comb(i, k)
        R.append(acc)
    live = [(k, r) for k, r in enumerate(R) if r]
    if not live:
        return []
    b = max(r.degree - k for k, r in live)
    alpha = UniPoly(())
    for k, r in live:
        if r.degree - k == b:
            ff = UniPoly((1,), "D")
            for j in range(k):
                ff = ff * UniPoly((-j, 1), "D")
            alpha = alpha + ff * r.lead
    bounds = [int(t) for t, _ in rational_roots(alpha) if t.denominator == 1 and t >= 0] if alpha.degree >= 1 else []
    if not bounds:
        return []
    top = min(max(bounds), degree_cap)
    # column j: sum_i Q_i(x) (x + i)^j
    cols = []
    for j in range(top + 1):
        acc = UniPoly(())
        for i, q in enumerate(Q):
            if q:
                acc = acc + q * UniPoly((i, 1)) ** j
        cols.append(acc)
    nrows = max((c.degree for c in cols if c), default=-1) + 1
    rows = [[c.coefficient(r) for c in cols] for r in range(nrows)]
    return [UniPoly(v) for v in kernel(rows, top + 1)]


@dataclass(frozen=True)
class SolutionClass:
    """Solutions ``theta^n * prod ffac(n + zeta)^k * (N(n)/denom(n))`` for ``N`` in a span."""

    theta: Fraction
    factors: tuple[FactorialFactor, ...]
    numerators: tuple[UniPoly, ...]
    denom: UniPoly

    @property
    def dimension(self) -> int:
        return len(self.numerators)

    def terms(self) -> list[HypergeometricTerm]:
        return [HypergeometricTerm(self.theta, RatFunc(n, self.denom), self.factors) for n in self.numerators]


def _annihilates(L: OreOperator, ratio: RatFunc) -> bool:
    return not right_rem(L, OreOperator.first_order(ratio))


def _candidate_terms(L: OreOperator, degree_cap: int) -> list[HypergeometricTerm]:
    p = L.polynomial_coefficients()
    d = len(p) - 1
    if d < 1:
        return []
    if not p[0]:
        raise ValueError("trailing coefficient vanishes; strip it before solving")
    A = _monic_divisors(p[0])
    B = _monic_divisors(p[d].shift(-(d - 1)))
    out: list[HypergeometricTerm] = []
    for a in A:
        for b in B:
            P = []
            for i in range(d + 1):
                t = p[i]
                for j in range(i):
                    t = t * a.shift(j)
                for j in range(i, d):
                    t = t * b.shift(j)
                P.append(t)
            m = max(t.degree for t in P if t)
            zpoly = UniPoly([t.coefficient(m) for t in P], "Z")
            if zpoly.degree < 1:
                continue
            for Z, _ in rational_roots(zpoly):
                if not Z:
                    continue
                Q = [t * Z**i for i, t in enumerate(P)]
                for c in polynomial_solutions(Q, degree_cap):
                    ratio = RatFunc(a * c.shift(1), b * c) * Z
                    if not _annihilates(L, ratio):
                        raise AssertionError(f"candidate quotient {ratio} does not solve {L}")
                    term = term_from_ratio(ratio)
                    if term is not None:
                        out.append(term)
    return out


def hypergeometric_solution_space(L: OreOperator, degree_cap: int = DEFAULT_DEGREE_CAP) -> list[SolutionClass]:
    """Hypergeometric solutions grouped by similarity class, each with a Q-basis."""
    groups: dict[tuple, list[HypergeometricTerm]] = {}
    for t in _candidate_terms(L, degree_cap):
        groups.setdefault(t.signature, []).append(t)
    out = []
    for key in sorted(groups):
        terms = groups[key]
        den = UniPoly((1,))
        for t in terms:
            den = uni_lcm(den, t.rat.den)
        nums = [t.rat.num * (den // t.rat.den) for t in terms]
        width = max(n.degree for n in nums) + 1
        red, _ = rref([[n.coefficient(i) for i in range(width)] for n in nums], width)
        basis = tuple(UniPoly(row) for row in red)
        out.append(SolutionClass(terms[0].theta, terms[0].factors, basis, den))
    return out


def petkovsek_hyper_solutions(L: OreOperator, degree_cap: int = DEFAULT_DEGREE_CAP) -> list[HypergeometricTerm]:
    """One hypergeometric solution per similarity class of solutions of ``L``."""
    return [cls.terms()[0] for cls in hypergeometric_solution_space(L, degree_cap)]
