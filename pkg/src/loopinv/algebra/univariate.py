"""Dense univariate polynomials and rational functions over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Sequence

from .multipoly import MultiPoly


def _frac(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


class UniPoly:
    """Polynomial with coefficients stored low degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [_frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def x(cls, var: str = "x") -> UniPoly:
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var: str = "x") -> UniPoly:
        return cls((c,), var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "x") -> UniPoly:
        p = cls((1,), var)
        for r in roots:
            p = p * cls((-_frac(r), 1), var)
        return p

    @classmethod
    def coerce(cls, c, var: str = "x") -> UniPoly:
        return c if isinstance(c, UniPoly) else cls((c,), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs], self.var)

    def __add__(self, other) -> UniPoly:
        other = UniPoly.coerce(other, self.var) if not isinstance(other, UniPoly) else other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __sub__(self, other) -> UniPoly:
        other = UniPoly.coerce(other, self.var) if not isinstance(other, UniPoly) else other
        return self + (-other)

    def __rsub__(self, other) -> UniPoly:
        return (-self) + other

    def __mul__(self, other) -> UniPoly:
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        result = UniPoly((1,), self.var)
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        other = UniPoly.coerce(other, self.var)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly((), self.var), self
        quo = [Fraction(0)] * (dq + 1)
        lc = other.lead
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lc
            quo[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(quo, self.var), UniPoly(rem[: other.degree], self.var)

    def __floordiv__(self, other) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> UniPoly:
        return divmod(self, other)[1]

    def exact_div(self, other: UniPoly) -> UniPoly:
        q, r = divmod(self, other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, (UniPoly, RatFunc, MultiPoly)) else x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k) -> UniPoly:
        """Return p(x + k)."""
        k = _frac(k)
        if not k or len(self.coeffs) <= 1:
            return self
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            kp = Fraction(1)
            for j in range(i, -1, -1):
                out[j] += c * comb(i, j) * kp
                kp *= k
        return UniPoly(out, self.var)

    def scale_var(self, s) -> UniPoly:
        """Return p(s*x)."""
        s = _frac(s)
        return UniPoly([c * s**i for i, c in enumerate(self.coeffs)], self.var)

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        lc = self.lead
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def to_multi(self, name: str | None = None) -> MultiPoly:
        name = name or self.var
        return MultiPoly((name,), {(i,): c for i, c in enumerate(self.coeffs) if c})

    @classmethod
    def from_multi(cls, p: MultiPoly, name: str) -> UniPoly:
        used = set(p.used_variables())
        if used - {name}:
            raise ValueError(f"{p} is not univariate in {name}")
        if name not in p.variables:
            return cls((p.constant_term(),), name)
        i = p.variables.index(name)
        d = p.degree(name)
        cs = [Fraction(0)] * (d + 1)
        for exp, c in p.terms.items():
            cs[exp[i]] += c
        return cls(cs, name)

    def to_integer_primitive(self) -> list[int]:
        """Integer coefficients with content 1 and positive leading coefficient."""
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        ints = [c // g for c in ints] if g else ints
        if ints and ints[-1] < 0:
            ints = [-c for c in ints]
        return ints

    def __str__(self) -> str:
        return str(self.to_multi())

    def __repr__(self) -> str:
        return f"UniPoly({str(self)!r})"


def _primitive_ints(cs: Sequence[Fraction]) -> list[int]:
    den = lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    g = gcd(*ints)
    return [c // g for c in ints]


def _prem_primitive(a: list[int], b: list[int]) -> list[int]:
    """Primitive part of the integer pseudo-remainder of ``a`` by ``b``."""
    a = list(a)
    lb, db = b[-1], len(b) - 1
    while len(a) > db:
        la, k = a[-1], len(a) - 1 - db
        a = [lb * c for c in a]
        for j, c in enumerate(b):
            a[k + j] -= la * c
        a.pop()
        while a and not a[-1]:
            a.pop()
    if not a:
        return a
    g = gcd(*a)
    return [c // g for c in a]


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (primitive remainder sequence over the integers)."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    if not a or not b:
        return (a or b).monic()
    u, v = _primitive_ints(a.coeffs), _primitive_ints(b.coeffs)
    if len(u) < len(v):
        u, v = v, u
    while v:
        u, v = v, _prem_primitive(u, v)
    return UniPoly(u, a.var).monic()


def uni_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    return (a * b // uni_gcd(a, b)).monic()


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Resultant through the Euclidean remainder sequence."""
    if not a or not b:
        return Fraction(0)
    sign = 1
    acc = Fraction(1)
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return sign * acc * b.lead**m
        r = a % b
        if not r:
            return Fraction(0)
        # res(a, b) = (-1)^(m n) lc(b)^(m - deg r) res(b, r)
        if (m * n) % 2:
            sign = -sign
        acc *= b.lead ** (m - r.degree)
        a, b = b, r


def _divisors(n: int) -> list[int]:
    n = abs(n)
    primes: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            primes[d] = primes.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        primes[n] = primes.get(n, 0) + 1
    divs = [1]
    for p, k in primes.items():
        divs = [x * p**i for x in divs for i in range(k + 1)]
    return sorted(divs)


def rational_root_candidates(p: UniPoly) -> list[Fraction]:
    ints = p.to_integer_primitive()
    while ints and ints[0] == 0:
        ints = ints[1:]
    if len(ints) <= 1:
        return []
    cands = set()
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            cands.add(Fraction(num, den))
            cands.add(Fraction(-num, den))
    return sorted(cands)


def rational_roots(p: UniPoly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicities, in increasing order."""
    if not p:
        raise ValueError("zero polynomial has every number as a root")
    out = []
    q = p
    mult = 0
    while q.coeffs and not q.coeffs[0]:
        q = UniPoly(q.coeffs[1:], q.var)
        mult += 1
    if mult:
        out.append((Fraction(0), mult))
    for r in rational_root_candidates(q):
        mult = 0
        lin = UniPoly((-r, 1), q.var)
        while q.degree >= 1 and not q(r):
            q = q.exact_div(lin)
            mult += 1
        if mult:
            out.append((r, mult))
    return sorted(out)


def linear_factor_split(p: UniPoly) -> tuple[list[tuple[Fraction, int]], UniPoly]:
    """Write ``p = lead * prod (x + zeta)^m * residual`` with a monic residual free of rational roots."""
    roots = rational_roots(p)
    residual = p.monic()
    for r, m in roots:
        residual = residual.exact_div(UniPoly((-r, 1), p.var) ** m)
    zetas = sorted((-r, m) for r, m in roots)
    return zetas, residual.monic()


def integer_roots(p: UniPoly) -> list[int]:
    if not p:
        raise ValueError("zero polynomial")
    return [int(r) for r, _ in rational_roots(p) if r.denominator == 1]


def shift_resultant(a: UniPoly, b: UniPoly) -> UniPoly:
    """``R(h) = res_x(a(x), b(x + h))`` as a polynomial in ``h``, by interpolation."""
    deg = a.degree * b.degree
    pts = list(range(deg + 1))
    vals = [resultant(a, b.shift(h)) for h in pts]
    return interpolate(pts, vals, var="h")


def interpolate(xs: Sequence, ys: Sequence, var: str = "x") -> UniPoly:
    """Lagrange interpolation through the points (xs[i], ys[i])."""
    result = UniPoly((), var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = UniPoly((1,), var)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly((-_frac(xj), 1), var)
                denom *= _frac(xi) - xj
        result = result + basis * (_frac(yi) / denom)
    return result


def dispersion_set(a: UniPoly, b: UniPoly, nonnegative: bool = True) -> list[int]:
    """Integers ``h`` with ``gcd(a(x), b(x + h)) != 1``."""
    if a.degree < 1 or b.degree < 1:
        return []
    R = shift_resultant(a, b)
    if not R:
        # a and b(x + h) share a factor for every h: only possible for constants
        return []
    hs = integer_roots(R) if R.degree >= 1 else []
    return sorted(h for h in hs if h >= 0) if nonnegative else sorted(hs)


class RatFunc:
    """Quotient of coprime polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _normalized: bool = False):
        num = UniPoly.coerce(num)
        den = UniPoly.coerce(1 if den is None else den, num.var)
        if _normalized:
            self.num, self.den = num, den
            return
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = UniPoly((), num.var), UniPoly((1,), num.var)
            return
        if den.degree > 0:
            g = uni_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lead
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def x(cls, var: str = "x") -> RatFunc:
        return cls(UniPoly.x(var))

    @classmethod
    def coerce(cls, c) -> RatFunc:
        if isinstance(c, RatFunc):
            return c
        if isinstance(c, UniPoly):
            return cls(c, _normalized=False)
        return cls(UniPoly((c,)), UniPoly((1,)), _normalized=True)

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coefficient(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, UniPoly)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, _normalized=True)

    def __add__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> RatFunc:
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> RatFunc:
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> RatFunc:
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num * other, self.den, _normalized=bool(other)) if other else RatFunc(0)
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RatFunc:
        return RatFunc.coerce(other) / self

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return RatFunc(1) / (self ** (-k))
        return RatFunc(self.num**k, self.den**k, _normalized=True)

    def shift(self, k) -> RatFunc:
        return RatFunc(self.num.shift(k), self.den.shift(k), _normalized=True)

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return self.num(x) / d

    def integer_poles(self) -> list[int]:
        return integer_roots(self.den) if self.den.degree >= 1 else []

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"
