"""Closed forms: sums of hypergeometric terms with falling-factorial factors.

A closed form is a finite sum of summands

    coeff(n) / denom(n) * theta^n * prod_z ffac(n + z)^k_z

where ``ffac(n + z) = (1 + z)(2 + z)...(n + z)`` (so ``ffac(n) = n!``),
``coeff`` is a polynomial in the counter and in symbolic parameters, and
``denom`` is a monic polynomial in the counter only.  Factor representatives
``z`` lie in ``[0, 1)``, which keeps every ``ffac`` nonzero for ``n >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import floor
from typing import Iterable, Mapping

from ..algebra.multipoly import MultiPoly
from ..algebra.univariate import RatFunc, UniPoly, uni_gcd, uni_lcm


def falling_factorial(zeta: Fraction, n: int) -> Fraction:
    """``prod_{i=1}^{n} (i + zeta)``."""
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= i + zeta
    return out


class _FactorialCache:
    def __init__(self):
        self._vals: dict[Fraction, list[Fraction]] = {}

    def __call__(self, zeta: Fraction, n: int) -> Fraction:
        vals = self._vals.setdefault(zeta, [Fraction(1)])
        while len(vals) <= n:
            vals.append(vals[-1] * (len(vals) + zeta))
        return vals[n]


_ffac = _FactorialCache()


def representative(zeta: Fraction) -> tuple[Fraction, int]:
    """Split ``zeta = rep + m`` with ``rep`` in ``[0, 1)`` and integer ``m``."""
    m = floor(zeta)
    return zeta - m, m


@dataclass(frozen=True, order=True)
class FactorialFactor:
    zeta: Fraction
    exponent: int

    def __call__(self, n: int) -> Fraction:
        v = _ffac(self.zeta, n)
        return v**self.exponent

    def __str__(self) -> str:
        base = "n!" if self.zeta == 0 else f"ffac(n + {self.zeta})"
        return base if self.exponent == 1 else f"{base}^{self.exponent}"


def _canonical_factors(factors: Iterable[FactorialFactor]) -> tuple[FactorialFactor, ...]:
    acc: dict[Fraction, int] = {}
    for f in factors:
        acc[f.zeta] = acc.get(f.zeta, 0) + f.exponent
    return tuple(FactorialFactor(z, k) for z, k in sorted(acc.items()) if k)


def _shift_window(zeta: Fraction, m: int, var: str = "x") -> RatFunc:
    """Rational ``w`` with ``w(x+1)/w(x) * (x + 1 + zeta) = x + 1 + zeta + m``."""
    w = RatFunc(1)
    if m > 0:
        for i in range(1, m + 1):
            w = w * UniPoly((zeta + i, 1), var)
    elif m < 0:
        for i in range(m + 1, 1):
            w = w / UniPoly((zeta + i, 1), var)
    return w


def normalize_factorials(factors: Iterable[tuple[Fraction, int]]) -> tuple[list[FactorialFactor], RatFunc]:
    """Rewrite each ``ffac(n + zeta)^k`` over the class representative of ``zeta`` mod 1.

    Returns the factors on representatives and a rational correction such that
    the original product equals ``correction(n) * prod(new factors)``.
    """
    out: list[FactorialFactor] = []
    corr = RatFunc(1)
    for zeta, k in factors:
        zeta = Fraction(zeta)
        rep, m = representative(zeta)
        w = _shift_window(rep, m)
        w0 = None
        try:
            w0 = w(0)
        except ZeroDivisionError:
            pass
        if not w0:
            raise ValueError(f"ffac(n + {zeta}) vanishes for n >= {-zeta}; no representative form")
        corr = corr * (w / w0) ** k
        out.append(FactorialFactor(rep, k))
    return list(_canonical_factors(out)), corr


@dataclass(frozen=True)
class HypergeometricTerm:
    """``theta^n * rat(n) * prod ffac(n + zeta)^k``."""

    theta: Fraction
    rat: RatFunc
    factors: tuple[FactorialFactor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "theta", Fraction(self.theta))
        object.__setattr__(self, "factors", _canonical_factors(self.factors))

    @property
    def signature(self) -> tuple:
        return (self.theta, tuple((f.zeta, f.exponent) for f in self.factors))

    def __call__(self, n: int) -> Fraction:
        v = self.theta**n * self.rat(n)
        for f in self.factors:
            v *= f(n)
        return v

    def shift_quotient(self) -> RatFunc:
        q = self.rat.shift(1) / self.rat * self.theta
        for f in self.factors:
            q = q * RatFunc(UniPoly((1 + f.zeta, 1))) ** f.exponent
        return q

    def __str__(self) -> str:
        parts = []
        if self.rat != 1:
            parts.append(f"({self.rat})".replace("x", "n"))
        if self.theta != 1:
            parts.append(f"({self.theta})^n" if self.theta < 0 or self.theta.denominator != 1 else f"{self.theta}^n")
        parts.extend(str(f) for f in self.factors)
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Summand:
    theta: Fraction
    factors: tuple[FactorialFactor, ...]
    coeff: MultiPoly
    denom: UniPoly = field(default_factory=lambda: UniPoly((1,)))

    @property
    def key(self) -> tuple:
        return (self.theta, tuple((f.zeta, f.exponent) for f in self.factors))


def _cancel(coeff: MultiPoly, denom: UniPoly, counter: str) -> tuple[MultiPoly, UniPoly]:
    """Remove the common factors of a coefficient and its (univariate) denominator."""
    if denom.is_constant() or not coeff:
        return coeff, denom
    params = [v for v in coeff.used_variables() if v != counter]
    pieces = coeff.coefficients_in(params)
    g = denom.monic()
    for piece in pieces.values():
        g = uni_gcd(g, UniPoly.from_multi(piece, counter))
        if g.is_constant():
            return coeff, denom
    out = MultiPoly.zero()
    for exp, piece in pieces.items():
        mono = MultiPoly.const(1)
        for name, e in zip(params, exp):
            mono = mono * MultiPoly.var(name) ** e
        out = out + UniPoly.from_multi(piece, counter).exact_div(g).to_multi(counter) * mono
    return out, denom.exact_div(g)


@dataclass(frozen=True)
class ClosedForm:
    """Closed form of one program variable, valid for ``n >= offset``."""

    variable: str
    counter: str
    summands: tuple[Summand, ...]
    offset: int = 0
    solver_params: tuple[str, ...] = ()

    @classmethod
    def build(cls, variable: str, counter: str, summands: Iterable[Summand], offset: int = 0,
              solver_params: Iterable[str] = ()) -> ClosedForm:
        merged: dict[tuple, Summand] = {}
        for s in summands:
            if not s.coeff:
                continue
            prev = merged.get(s.key)
            if prev is None:
                merged[s.key] = s
                continue
            den = uni_lcm(prev.denom, s.denom)
            a = prev.coeff * (den // prev.denom).to_multi(counter)
            b = s.coeff * (den // s.denom).to_multi(counter)
            merged[s.key] = Summand(s.theta, s.factors, a + b, den)
        out = []
        for k in sorted(merged):
            sm = merged[k]
            if sm.coeff:
                coeff, den = _cancel(sm.coeff, sm.denom, counter)
                out.append(Summand(sm.theta, sm.factors, coeff, den) if den != sm.denom else sm)
        out = tuple(out)
        used = set()
        for sm in out:
            used.update(sm.coeff.used_variables())
        return cls(variable, counter, out, offset, tuple(p for p in solver_params if p in used))

    @property
    def thetas(self) -> list[Fraction]:
        return sorted({s.theta for s in self.summands})

    @property
    def zetas(self) -> list[Fraction]:
        return sorted({f.zeta for s in self.summands for f in s.factors})

    def parameters(self) -> list[str]:
        names = set()
        for s in self.summands:
            names.update(s.coeff.used_variables())
        names.discard(self.counter)
        return sorted(names)

    def is_cfinite(self) -> bool:
        return all(not s.factors and s.denom.is_constant() for s in self.summands)

    def evaluate(self, n: int, bindings: Mapping[str, Fraction] | None = None) -> Fraction:
        bindings = dict(bindings or {})
        bindings[self.counter] = Fraction(n)
        total = Fraction(0)
        for s in self.summands:
            v = s.coeff.evaluate(bindings) / s.denom(n) * s.theta**n
            for f in s.factors:
                v *= f(n)
            total += v
        return total

    def evaluate_symbolic(self, n: int) -> MultiPoly:
        """Value at ``n`` as a polynomial in the parameters."""
        total = MultiPoly.zero()
        for s in self.summands:
            scal = s.theta**n / s.denom(n)
            for f in s.factors:
                scal *= f(n)
            total = total + s.coeff.subs({self.counter: n}) * scal
        return total

    def shift(self, delta: int) -> ClosedForm:
        """The sequence ``n -> self(n - delta)`` for ``delta >= 0``."""
        if delta < 0:
            raise ValueError("only delays are supported")
        if delta == 0:
            return self
        x = MultiPoly.var(self.counter)
        out = []
        for s in self.summands:
            coeff = s.coeff.subs({self.counter: x - delta}) * (Fraction(1) / s.theta**delta)
            denom = s.denom.shift(-delta)
            for f in s.factors:
                window = UniPoly((1,))
                for j in range(delta):
                    window = window * UniPoly((f.zeta - j, 1))
                if f.exponent > 0:
                    denom = denom * window**f.exponent
                else:
                    coeff = coeff * (window ** (-f.exponent)).to_multi(self.counter)
            out.append(Summand(s.theta, s.factors, coeff, denom))
        return ClosedForm.build(self.variable, self.counter, out, self.offset + delta, self.solver_params)

    def with_variable(self, name: str) -> ClosedForm:
        return replace(self, variable=name)

    def as_fraction(self, evars: Mapping[Fraction, str], hvars: Mapping[Fraction, str]) -> tuple[MultiPoly, MultiPoly]:
        """Numerator and denominator of the closed form with ``theta^n -> e`` and ``ffac -> h``."""
        den = UniPoly((1,))
        for s in self.summands:
            den = uni_lcm(den, s.denom)
        neg: dict[Fraction, int] = {}
        for s in self.summands:
            for f in s.factors:
                if f.exponent < 0:
                    neg[f.zeta] = max(neg.get(f.zeta, 0), -f.exponent)
        g = den.to_multi(self.counter)
        for z, k in neg.items():
            g = g * MultiPoly.var(hvars[z]) ** k
        f_total = MultiPoly.zero()
        for s in self.summands:
            t = s.coeff * (den // s.denom).to_multi(self.counter)
            if s.theta != 1:
                t = t * MultiPoly.var(evars[s.theta])
            exps = {f.zeta: f.exponent for f in s.factors}
            for z in set(exps) | set(neg):
                k = exps.get(z, 0) + neg.get(z, 0)
                if k:
                    t = t * MultiPoly.var(hvars[z]) ** k
            f_total = f_total + t
        return f_total, g

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        parts = []
        for s in self.summands:
            coeff = str(s.coeff)
            if not s.denom.is_constant():
                coeff = f"({coeff})/({s.denom.to_multi(self.counter)})"
            elif len(s.coeff.terms) > 1:
                coeff = f"({coeff})"
            pieces = [] if coeff == "1" else [coeff]
            if s.theta != 1:
                pieces.append(f"({s.theta})^{self.counter}" if s.theta < 0 or s.theta.denominator != 1 else f"{s.theta}^{self.counter}")
            for f in s.factors:
                pieces.append(str(f).replace("n", self.counter))
            parts.append("*".join(pieces) if pieces else "1")
        return " + ".join(parts)


def eval_closed_form(cf: ClosedForm, n: int, bindings: Mapping[str, Fraction] | None = None) -> Fraction:
    return cf.evaluate(n, bindings)
