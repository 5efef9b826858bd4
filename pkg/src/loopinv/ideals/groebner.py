"""Buchberger's algorithm with the Gebauer-Moeller criteria and sugar selection.

Internally a polynomial is a list of ``(key, exp, coeff)`` triples sorted by
decreasing monomial.  ``exp`` packs the exponent vector into one integer
(fixed-width fields with a guard bit, so products are additions and
divisibility is a single mask test) and ``key`` is an integer that is linear
in the exponents and compares like the monomial order.  Coefficients are
``gmpy2.mpq`` when gmpy2 is installed and ``Fraction`` otherwise.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..algebra.multipoly import MultiPoly
from ..errors import ResourceLimitExceeded

try:  # pragma: no cover - depends on the environment
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

DEFAULT_STEP_CAP = 20000


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order over a fixed variable list.

    ``block`` orders compare the first block by grevlex and break ties with
    the next block, so any monomial containing an eliminated variable exceeds
    every monomial in the kept variables alone.
    """

    kind: str
    blocks: tuple[tuple[str, ...], ...]

    @classmethod
    def grevlex(cls, variables: Iterable[str]) -> MonomialOrder:
        return cls("grevlex", (tuple(variables),))

    @classmethod
    def lex(cls, variables: Iterable[str]) -> MonomialOrder:
        return cls("lex", (tuple(variables),))

    @classmethod
    def block(cls, eliminated: Iterable[str], kept: Iterable[str]) -> MonomialOrder:
        return cls("block", (tuple(eliminated), tuple(kept)))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for b in self.blocks for v in b)

    @property
    def eliminated(self) -> tuple[str, ...]:
        return self.blocks[0] if self.kind == "block" else ()

    @property
    def kept(self) -> tuple[str, ...]:
        return self.blocks[-1] if self.kind == "block" else self.variables

    def key(self, exp: Sequence[int]) -> tuple[int, ...]:
        if self.kind == "lex":
            return tuple(exp)
        out: list[int] = []
        pos = 0
        for b in self.blocks:
            part = exp[pos : pos + len(b)]
            pos += len(b)
            out.append(sum(part))
            out.extend(-e for e in reversed(part))
        return tuple(out)

    def restrict(self) -> MonomialOrder:
        """The order induced on the kept variables."""
        if self.kind != "block":
            return self
        return MonomialOrder.grevlex(self.kept)


@dataclass
class IdealBasis:
    generators: list[MultiPoly]
    order: MonomialOrder
    reduced: bool = False
    groebner: bool = True
    stats: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, p: MultiPoly) -> bool:
        if not self.groebner:
            raise ValueError("membership test needs a Groebner basis")
        return not normal_form(p, self)


# internal representation

Term = tuple  # (key, packed exponent, coefficient)

_FIELD_BITS = 16
_MAX_EXP = (1 << (_FIELD_BITS - 1)) - 1


class _Ring:
    """Packing of exponent vectors and order keys for one variable list."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.nvars = n = len(order.variables)
        self.guard = sum(1 << (_FIELD_BITS * i + _FIELD_BITS - 1) for i in range(n))
        # balanced radix wide enough for every key field
        kbits = _FIELD_BITS + max(n, 1).bit_length() + 2
        nfields = len(order.key((0,) * n)) if n else 0
        self.weights = []
        for i in range(n):
            unit = [0] * n
            unit[i] = 1
            fs = order.key(tuple(unit))
            self.weights.append(sum(f << (kbits * (nfields - 1 - j)) for j, f in enumerate(fs)))

    def pack(self, exp: Sequence[int]) -> int:
        out = 0
        for i, e in enumerate(exp):
            if e > _MAX_EXP:
                raise ResourceLimitExceeded(f"exponent {e} exceeds the supported bound {_MAX_EXP}")
            out |= e << (_FIELD_BITS * i)
        return out

    def unpack(self, packed: int) -> tuple[int, ...]:
        mask = (1 << _FIELD_BITS) - 1
        return tuple((packed >> (_FIELD_BITS * i)) & mask for i in range(self.nvars))

    def key(self, exp: Sequence[int]) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b + g - a) & g) == g

    def lcm(self, a: int, b: int) -> int:
        return self.pack(tuple(max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))))

    def degree(self, packed: int) -> int:
        return sum(self.unpack(packed))


def _to_internal(p: MultiPoly, ring: _Ring) -> list[Term]:
    vs = ring.order.variables
    q = p.extend(vs) if p.variables != vs else p
    terms = [(ring.key(e), ring.pack(e), _Q(c.numerator, c.denominator)) for e, c in q.terms.items()]
    terms.sort(key=lambda t: t[0], reverse=True)
    return terms


def _to_multi(p: list[Term], ring: _Ring) -> MultiPoly:
    return MultiPoly._raw(ring.order.variables,
                          {ring.unpack(e): Fraction(int(c.numerator), int(c.denominator)) for _, e, c in p})


def _monic(p: list[Term]) -> list[Term]:
    c0 = p[0][2]
    if c0 == 1:
        return p
    inv = 1 / c0
    return [(k, e, c * inv) for k, e, c in p]


def _reduce(p: Iterable[Term], G: Sequence[list[Term]], ring: _Ring) -> list[Term]:
    """Full reduction of ``p`` by monic ``G``; returns the sorted remainder."""
    acc: dict[int, list] = {}
    heap: list[int] = []
    for k, e, c in p:
        if k in acc:
            acc[k][1] += c
        else:
            acc[k] = [e, c]
            heap.append(-k)
    heapq.heapify(heap)
    leads = [(g[0][0], g[0][1], g) for g in G]
    divides = ring.divides
    rem: list[Term] = []
    push = heapq.heappush
    pop = heapq.heappop
    while heap:
        k = -pop(heap)
        entry = acc.pop(k, None)
        if entry is None:
            continue
        e, c = entry
        if not c:
            continue
        for gk, ge, g in leads:
            if divides(ge, e):
                dk, de = k - gk, e - ge
                for tk, te, tc in g[1:]:
                    nk = tk + dk
                    cur = acc.get(nk)
                    if cur is None:
                        acc[nk] = [te + de, -c * tc]
                        push(heap, -nk)
                    else:
                        cur[1] -= c * tc
                break
        else:
            rem.append((k, e, c))
    return rem


@dataclass
class _Pair:
    sugar: int
    lcm_key: int
    lcm: int
    i: int
    j: int

    def rank(self):
        return (self.sugar, self.lcm_key, self.i, self.j)


class _Engine:
    def __init__(self, order: MonomialOrder, step_cap: int | None, ring: _Ring | None = None):
        self.order = order
        self.ring = ring or _Ring(order)
        self.step_cap = step_cap
        self.f: list[list[Term]] = []
        self.sugar: list[int] = []
        self.steps = 0

    def lm(self, i: int) -> int:
        return self.f[i][0][1]

    def add(self, p: list[Term], sugar: int) -> int:
        self.f.append(_monic(p))
        self.sugar.append(sugar)
        return len(self.f) - 1

    def spoly_terms(self, i: int, j: int, lcm: int) -> list[Term]:
        f, g = self.f[i], self.f[j]
        fk, fe, _ = f[0]
        gk, ge, _ = g[0]
        lk = self.ring.key(self.ring.unpack(lcm))
        a_k, a_e = lk - fk, lcm - fe
        b_k, b_e = lk - gk, lcm - ge
        out = [(k + a_k, e + a_e, c) for k, e, c in f[1:]]
        out.extend((k + b_k, e + b_e, -c) for k, e, c in g[1:])
        return out

    def make_pair(self, i: int, j: int) -> _Pair:
        ring = self.ring
        L = ring.lcm(self.lm(i), self.lm(j))
        dL = ring.degree(L)
        sug = max(self.sugar[i] + dL - ring.degree(self.lm(i)), self.sugar[j] + dL - ring.degree(self.lm(j)))
        return _Pair(sug, ring.key(ring.unpack(L)), L, i, j)

    def update(self, G: list[int], B: list[_Pair], ih: int):
        ring = self.ring
        div = ring.divides
        mh = self.lm(ih)
        C = [self.make_pair(ih, ig) for ig in G]
        D: list[_Pair] = []
        while C:
            pair = C.pop(0)
            mg = self.lm(pair.j)
            coprime = mh + mg == pair.lcm
            if coprime or not (any(div(q.lcm, pair.lcm) for q in C) or any(div(q.lcm, pair.lcm) for q in D)):
                D.append(pair)
        E = [q for q in D if mh + self.lm(q.j) != q.lcm]
        B_new = []
        for q in B:
            m1, m2 = self.lm(q.i), self.lm(q.j)
            if not div(mh, q.lcm) or ring.lcm(m1, mh) == q.lcm or ring.lcm(m2, mh) == q.lcm:
                B_new.append(q)
        B_new.extend(E)
        G_new = [ig for ig in G if not div(mh, self.lm(ig))]
        G_new.append(ih)
        return G_new, B_new

    def run(self, gens: list[list[Term]]) -> list[int]:
        ring = self.ring
        G: list[int] = []
        B: list[_Pair] = []
        for g in sorted(gens, key=lambda t: t[0][0]):
            r = _reduce(g, [self.f[i] for i in G], ring)
            if not r:
                continue
            sug = max(ring.degree(e) for _, e, _ in g)
            G, B = self.update(G, B, self.add(r, sug))
        while B:
            best = min(range(len(B)), key=lambda t: B[t].rank())
            pair = B.pop(best)
            self.steps += 1
            if self.step_cap is not None and self.steps > self.step_cap:
                raise ResourceLimitExceeded(f"Buchberger exceeded {self.step_cap} S-polynomial reductions")
            h = _reduce(self.spoly_terms(pair.i, pair.j, pair.lcm), [self.f[k] for k in G], ring)
            if h:
                G, B = self.update(G, B, self.add(h, pair.sugar))
        return G


def _interreduce(polys: list[list[Term]], ring: _Ring) -> list[list[Term]]:
    out = []
    for i, p in enumerate(polys):
        reducers = out + polys[i + 1 :]
        r = [p[0]] + _reduce(p[1:], reducers, ring)
        out.append(_monic(r))
    return out


def buchberger(
    gens: Iterable[MultiPoly],
    order: MonomialOrder,
    reduced: bool = True,
    step_cap: int | None = DEFAULT_STEP_CAP,
) -> IdealBasis:
    """Groebner basis of ``<gens>``; ``reduced`` also interreduces the tails."""
    ring = _Ring(order)
    internal = [_to_internal(MultiPoly.coerce(g), ring) for g in gens]
    internal = [p for p in internal if p]
    eng = _Engine(order, step_cap, ring)
    G = eng.run(internal)
    basis = [eng.f[i] for i in G]
    basis.sort(key=lambda p: p[0][0])
    if reduced:
        basis = _interreduce(basis, ring)
    gens_out = [_to_multi(p, ring) for p in basis]
    return IdealBasis(gens_out, order, reduced=reduced, stats={"spoly_reductions": eng.steps})


def normal_form(p: MultiPoly, basis: IdealBasis) -> MultiPoly:
    """Remainder of ``p`` on full division by the basis."""
    order = basis.order
    vs = set(order.variables)
    extra = [v for v in MultiPoly.coerce(p).used_variables() if v not in vs]
    if extra:
        # variables outside the ring are kept as smallest
        order = MonomialOrder(order.kind, order.blocks + (tuple(sorted(extra)),)) if order.kind != "lex" else MonomialOrder.lex(order.variables + tuple(sorted(extra)))
    ring = _Ring(order)
    G = [_monic(_to_internal(g, ring)) for g in basis.generators if g]
    r = _reduce(_to_internal(MultiPoly.coerce(p), ring), G, ring)
    return _to_multi(r, ring).drop_unused()


def reduce_basis(basis: IdealBasis, step_cap: int | None = DEFAULT_STEP_CAP) -> IdealBasis:
    """The reduced Groebner basis of the same ideal and order."""
    if basis.reduced:
        return basis
    return buchberger(basis.generators, basis.order, reduced=True, step_cap=step_cap)


def eliminate(basis: IdealBasis | Iterable[MultiPoly], drop: Iterable[str], reduced: bool = True,
              step_cap: int | None = DEFAULT_STEP_CAP, kept: Sequence[str] | None = None) -> IdealBasis:
    """Generators of the ideal intersected with the subring free of ``drop``."""
    gens = list(basis.generators if isinstance(basis, IdealBasis) else basis)
    gens = [MultiPoly.coerce(g) for g in gens]
    drop = list(dict.fromkeys(drop))
    if kept is None:
        if isinstance(basis, IdealBasis):
            pool = list(basis.order.variables)
        else:
            pool = []
        for g in gens:
            pool.extend(g.used_variables())
        kept = [v for v in dict.fromkeys(pool) if v not in drop]
    order = MonomialOrder.block(drop, kept)
    gb = buchberger(gens, order, reduced=reduced, step_cap=step_cap)
    dropped = set(drop)
    keep_gens = [g for g in gb.generators if not (set(g.used_variables()) & dropped)]
    sub = MonomialOrder.grevlex(kept)
    return IdealBasis([g.extend(sub.variables) for g in keep_gens], sub, reduced=reduced, stats=gb.stats)


def spolys_reduce_to_zero(basis: IdealBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    eng = _Engine(basis.order, None)
    G = [_to_internal(g, eng.ring) for g in basis.generators if g]
    for g in G:
        eng.add(g, 0)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            L = eng.ring.lcm(eng.lm(i), eng.lm(j))
            if _reduce(eng.spoly_terms(i, j, L), eng.f, eng.ring):
                return False
    return True
