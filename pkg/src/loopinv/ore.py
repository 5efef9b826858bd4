"""Recurrence operators in the skew polynomial ring Q(x)[S; sigma, 0].

``S`` is the forward shift; multiplication obeys ``S * a(x) = a(x + 1) * S``.
Operators act on sequences by ``(sum l_i S^i)(t)(n) = sum l_i(n) t(n + i)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra.linalg import kernel
from .algebra.univariate import RatFunc, UniPoly


def _rf(c) -> RatFunc:
    return RatFunc.coerce(c)


class OreOperator:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_rf(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[RatFunc, ...] = tuple(cs)

    # construction helpers
    @classmethod
    def S(cls) -> OreOperator:
        return cls((0, 1))

    @classmethod
    def delta(cls, power: int = 1) -> OreOperator:
        """(S - 1)^power."""
        op = cls((1,))
        for _ in range(power):
            op = op * cls((-1, 1))
        return op

    @classmethod
    def first_order(cls, ratio) -> OreOperator:
        """``S - ratio``, the annihilator of a hypergeometric term with shift quotient ``ratio``."""
        return cls((-_rf(ratio), 1))

    @classmethod
    def from_polys(cls, polys: Sequence) -> OreOperator:
        return cls([_rf(p) for p in polys])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> RatFunc:
        return self.coeffs[-1] if self.coeffs else RatFunc(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OreOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def coefficient(self, i: int) -> RatFunc:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RatFunc(0)

    def is_constant_coefficient(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def monic(self) -> OreOperator:
        if not self.coeffs:
            return self
        lc = self.lead
        if lc == 1:
            return self
        return OreOperator([c / lc for c in self.coeffs])

    # ring operations
    def __add__(self, other) -> OreOperator:
        other = _coerce_op(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return OreOperator([self.coefficient(i) + other.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> OreOperator:
        return OreOperator([-c for c in self.coeffs])

    def __sub__(self, other) -> OreOperator:
        return self + (-_coerce_op(other))

    def __rsub__(self, other) -> OreOperator:
        return _coerce_op(other) - self

    def __mul__(self, other) -> OreOperator:
        other = _coerce_op(other)
        if not self.coeffs or not other.coeffs:
            return OreOperator()
        out = [RatFunc(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b.shift(i)
        return OreOperator(out)

    def __rmul__(self, other) -> OreOperator:
        return _coerce_op(other) * self

    def __pow__(self, k: int) -> OreOperator:
        result = OreOperator((1,))
        for _ in range(k):
            result = result * self
        return result

    def left_scale(self, r) -> OreOperator:
        r = _rf(r)
        return OreOperator([r * c for c in self.coeffs])

    # action on sequences
    def apply(self, t: Callable[[int], object]) -> Callable[[int], object]:
        """The sequence ``n -> sum l_i(n) t(n + i)``."""
        coeffs = self.coeffs

        def image(n: int):
            total = Fraction(0)
            for i, c in enumerate(coeffs):
                if c:
                    total = total + c(n) * t(n + i)
            return total

        return image

    def polynomial_coefficients(self) -> list[UniPoly]:
        """Coefficients scaled by the lcm of denominators (left multiplication by a polynomial)."""
        from .algebra.univariate import uni_lcm

        den = UniPoly((1,))
        for c in self.coeffs:
            den = uni_lcm(den, c.den)
        return [(c * den).num for c in self.coeffs]

    def integer_singularities(self) -> list[int]:
        """Integers where some coefficient has a pole or the trailing coefficient vanishes."""
        pts: set[int] = set()
        for c in self.coeffs:
            pts.update(c.integer_poles())
        if self.coeffs and self.coeffs[0] and self.coeffs[0].num.degree >= 1:
            from .algebra.univariate import integer_roots

            pts.update(integer_roots(self.coeffs[0].num))
        return sorted(pts)

    def validity_offset(self) -> int:
        """First n from which all coefficients are defined and the trailing one is nonzero."""
        sing = [p for p in self.integer_singularities() if p >= 0]
        return max(sing) + 1 if sing else 0

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            s = "S" if i == 1 else (f"S^{i}" if i else "")
            if not s:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(s)
            else:
                parts.append(f"({c})*{s}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"OreOperator({str(self)!r})"


def _coerce_op(x) -> OreOperator:
    if isinstance(x, OreOperator):
        return x
    return OreOperator((x,))


def ore_mul(a: OreOperator, b: OreOperator) -> OreOperator:
    return a * b


def right_divmod(a: OreOperator, b: OreOperator) -> tuple[OreOperator, OreOperator]:
    """``a = Q * b + R`` with ``order(R) < order(b)``."""
    if not b:
        raise ZeroDivisionError("right division by the zero operator")
    quo = [RatFunc(0)] * max(a.order - b.order + 1, 0)
    rem = a
    lb = b.lead
    while rem and rem.order >= b.order:
        k = rem.order - b.order
        q = rem.lead / lb.shift(k)
        quo[k] = quo[k] + q
        term = [RatFunc(0)] * k + [q]
        rem = rem - OreOperator(term) * b
    return OreOperator(quo), rem


def right_rem(a: OreOperator, b: OreOperator) -> OreOperator:
    return right_divmod(a, b)[1]


def gcrd(a: OreOperator, b: OreOperator) -> OreOperator:
    """Monic greatest common right divisor by the right Euclidean algorithm."""
    if not a and not b:
        raise ValueError("gcrd of two zero operators")
    while b:
        a, b = b, right_rem(a, b)
    return a.monic()


def lclm(a: OreOperator, b: OreOperator) -> OreOperator:
    """Monic least common left multiple.

    Finds the first ``k`` for which ``S^0 .. S^k`` become dependent modulo both
    ``a`` and ``b`` (right remainders); the dependency is the multiple.
    """
    if not a or not b:
        raise ValueError("lclm with the zero operator")
    a, b = a.monic(), b.monic()
    da, db = a.order, b.order
    if da == 0:
        return b
    if db == 0:
        return a
    rows: list[list[RatFunc]] = []
    ra = OreOperator((1,))
    rb = OreOperator((1,))
    for k in range(da + db + 1):
        if k:
            ra = right_rem(OreOperator.S() * ra, a)
            rb = right_rem(OreOperator.S() * rb, b)
        rows.append([ra.coefficient(i) for i in range(da)] + [rb.coefficient(i) for i in range(db)])
        if k < max(da, db):
            continue
        # columns of the transposed system are the rows built so far
        mat = [[rows[j][i] for j in range(len(rows))] for i in range(da + db)]
        ker = kernel(mat, len(rows), one=RatFunc(1), zero=RatFunc(0))
        if ker:
            # keep the unique (up to scaling) relation involving S^k
            vec = next(v for v in ker if v[k])
            return OreOperator(vec).monic()
    raise AssertionError("lclm search exceeded order bound")


