"""Sparse multivariate polynomials over the rationals.

A :class:`MultiPoly` stores an ordered tuple of variable names and a map from
exponent vectors to :class:`fractions.Fraction` coefficients.  Binary
operations extend both operands to the union of their variable lists, so
polynomials built independently can be mixed freely.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from ..errors import ParseError
from .lexer import TokenStream, tokenize

Number = Union[int, Fraction]


def _frac(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


def grevlex_key(exp: tuple[int, ...]):
    """Sort key: larger key means larger monomial in graded reverse lex."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not match variables {self.variables}")
                c = _frac(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict) -> MultiPoly:
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    # constructors
    @classmethod
    def zero(cls) -> MultiPoly:
        return cls._raw((), {})

    @classmethod
    def const(cls, c: Number) -> MultiPoly:
        c = _frac(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to MultiPoly")

    @classmethod
    def parse(cls, text: str) -> MultiPoly:
        return parse_poly(text)

    # structure
    def extend(self, variables: tuple[str, ...]) -> MultiPoly:
        """Re-express over ``variables``, which must contain every used variable."""
        if variables == self.variables:
            return self
        idx = {v: i for i, v in enumerate(variables)}
        n = len(variables)
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * n
            for v, e in zip(self.variables, exp):
                if e:
                    if v not in idx:
                        raise ValueError(f"variable {v!r} missing from target list")
                    new[idx[v]] = e
            terms[tuple(new)] = c
        return MultiPoly._raw(tuple(variables), terms)

    def _unify(self, other: MultiPoly) -> tuple[tuple[str, ...], dict, dict]:
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        seen = set(self.variables)
        vs = self.variables + tuple(v for v in other.variables if v not in seen)
        return vs, self.extend(vs).terms, other.extend(vs).terms

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def drop_unused(self) -> MultiPoly:
        return self.extend(self.used_variables())

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(exp) for exp in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(exp[i] for exp in self.terms)

    total_degree = degree

    # arithmetic
    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                other = MultiPoly.const(other)
            else:
                return NotImplemented
        vs, a, b = self._unify(other)
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(vs, out)

    __radd__ = __add__

    def __sub__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                other = MultiPoly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def scale(self, c: Number) -> MultiPoly:
        c = _frac(c)
        if not c:
            return MultiPoly._raw(self.variables, {})
        return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        vs, a, b = self._unify(other)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(vs, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if not other:
                raise ZeroDivisionError("division by the zero polynomial")
            if not other.is_constant():
                raise ValueError(f"division by the non-constant polynomial {other}")
            other = other.constant_value()
        return self.scale(1 / _frac(other))

    def __pow__(self, k: int) -> MultiPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly._raw(self.variables, {(0,) * len(self.variables): Fraction(1)})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison
    def _canon(self) -> dict:
        out = {}
        for exp, c in self.terms.items():
            key = tuple(sorted((v, e) for v, e in zip(self.variables, exp) if e))
            out[key] = c
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.variables == other.variables:
            return self.terms == other.terms
        return self._canon() == other._canon()

    def __hash__(self) -> int:
        return hash(frozenset(self._canon().items()))

    # evaluation and substitution
    def evaluate(self, bindings: Mapping[str, Number]) -> Fraction:
        vals = []
        for v in self.variables:
            vals.append(bindings.get(v))
        total = Fraction(0)
        for exp, c in self.terms.items():
            t = c
            for val, e, name in zip(vals, exp, self.variables):
                if e:
                    if val is None:
                        raise KeyError(f"unbound variable {name!r}")
                    t = t * val**e
            total += t
        return total

    def subs(self, mapping: Mapping[str, object]) -> MultiPoly:
        """Substitute polynomials or numbers for some variables."""
        if not any(v in mapping for v in self.variables):
            return self
        keep = tuple(v for v in self.variables if v not in mapping)
        keep_idx = [i for i, v in enumerate(self.variables) if v not in mapping]
        sub_idx = [(i, MultiPoly.coerce(mapping[v])) for i, v in enumerate(self.variables) if v in mapping]
        powers: dict[tuple[int, int], MultiPoly] = {}
        result = MultiPoly._raw(keep, {})
        grouped: dict[tuple, dict] = {}
        for exp, c in self.terms.items():
            skey = tuple(exp[i] for i, _ in sub_idx)
            kexp = tuple(exp[i] for i in keep_idx)
            grouped.setdefault(skey, {})[kexp] = c
        for skey, kterms in grouped.items():
            factor = MultiPoly.const(1)
            for (i, q), e in zip(sub_idx, skey):
                if e:
                    if (i, e) not in powers:
                        powers[(i, e)] = q**e
                    factor = factor * powers[(i, e)]
            result = result + factor * MultiPoly._raw(keep, kterms)
        return result

    def coefficients_in(self, names: Iterable[str]) -> dict[tuple[int, ...], MultiPoly]:
        """Split as a polynomial in ``names`` with coefficients in the remaining variables."""
        names = tuple(names)
        idx = [self.variables.index(v) if v in self.variables else None for v in names]
        rest = tuple(v for v in self.variables if v not in names)
        rest_idx = [i for i, v in enumerate(self.variables) if v not in names]
        out: dict[tuple[int, ...], dict] = {}
        for exp, c in self.terms.items():
            key = tuple(exp[i] if i is not None else 0 for i in idx)
            out.setdefault(key, {})[tuple(exp[i] for i in rest_idx)] = c
        return {k: MultiPoly._raw(rest, t) for k, t in out.items()}

    def content_normalized(self) -> MultiPoly:
        """Scale to integer coefficients with gcd 1 and positive leading coefficient (grevlex on sorted names)."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, (c * den).numerator)
        p = self.scale(Fraction(den, g))
        lead = p.sorted_terms()[0][1]
        return -p if lead < 0 else p

    def monic(self, key=None) -> MultiPoly:
        if not self.terms:
            return self
        lead = self.sorted_terms(key)[0][1]
        return self.scale(1 / lead)

    # printing
    def sorted_terms(self, key=None) -> list[tuple[tuple[tuple[str, int], ...], Fraction]]:
        """Terms as ((var, exp), ...) with variables sorted by name, in descending grevlex order."""
        names = tuple(sorted(self.used_variables()))
        p = self.extend(names)
        key = key or grevlex_key
        out = []
        for exp in sorted(p.terms, key=key, reverse=True):
            out.append((tuple((v, e) for v, e in zip(names, exp) if e), p.terms[exp]))
        return out

    def __str__(self) -> str:
        items = self.sorted_terms()
        if not items:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(items):
            neg = c < 0
            a = -c if neg else c
            mono_s = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not mono_s:
                body = _fmt_frac(a)
            elif a == 1:
                body = mono_s
            else:
                body = f"{_fmt_frac(a)}*{mono_s}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def variables(names: str) -> tuple[MultiPoly, ...]:
    """``variables("a b c")`` returns the three generators."""
    return tuple(MultiPoly.var(v) for v in names.replace(",", " ").split())


def parse_poly(text: str) -> MultiPoly:
    """Parse strings such as ``"3/2*a^2*b - x + 1"`` (``**`` is accepted for powers)."""
    ts = TokenStream(tokenize(text))
    p = _parse_sum(ts)
    if ts.peek.kind != "eof":
        raise ts.error(f"unexpected token {ts.peek.text!r}")
    return p


def _parse_sum(ts: TokenStream) -> MultiPoly:
    if ts.accept("-"):
        p = -_parse_product(ts)
    else:
        ts.accept("+")
        p = _parse_product(ts)
    while True:
        if ts.accept("+"):
            p = p + _parse_product(ts)
        elif ts.accept("-"):
            p = p - _parse_product(ts)
        else:
            return p


def _parse_product(ts: TokenStream) -> MultiPoly:
    p = _parse_power(ts)
    while True:
        if ts.accept("*"):
            p = p * _parse_power(ts)
        elif ts.accept("/"):
            tok = ts.peek
            q = _parse_power(ts)
            if not q.is_constant() or not q:
                raise ParseError("division only by nonzero constants", tok.line, tok.column)
            p = p / q
        else:
            return p


def _parse_power(ts: TokenStream) -> MultiPoly:
    base = _parse_atom(ts)
    if ts.accept("^") or ts.accept("**"):
        tok = ts.next()
        if tok.kind != "num":
            raise ParseError("exponent must be a nonnegative integer", tok.line, tok.column)
        return base ** int(tok.text)
    return base


def _parse_atom(ts: TokenStream) -> MultiPoly:
    tok = ts.next()
    if tok.kind == "num":
        return MultiPoly.const(int(tok.text))
    if tok.kind == "ident":
        return MultiPoly.var(tok.text)
    if tok.text == "(":
        p = _parse_sum(ts)
        ts.expect(")")
        return p
    if tok.text == "-":
        return -_parse_power(ts)
    raise ParseError(f"unexpected token {tok.text or 'end of input'!r}", tok.line, tok.column)
