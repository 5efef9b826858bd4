"""Multiplicative relations among rational numbers and their binomial ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..algebra.multipoly import MultiPoly
from .groebner import DEFAULT_STEP_CAP, IdealBasis, MonomialOrder, buchberger, eliminate


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{v in Z^ncols : rows @ v = 0}`` by unimodular column operations."""
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns of U

    def colop(j, k, q):  # col_j -= q * col_k
        for r in A:
            r[j] -= q * r[k]
        for r in U:
            r[j] -= q * r[k]

    def swap(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in U:
            r[j], r[k] = r[k], r[j]

    c = 0
    for row in A:
        if c >= ncols:
            break
        while True:
            nz = [j for j in range(c, ncols) if row[j]]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(row[j]))
            if piv != c:
                swap(piv, c)
            done = True
            for j in range(c + 1, ncols):
                if row[j]:
                    colop(j, c, row[j] // row[c])
                    if row[j]:
                        done = False
            if done:
                break
        if row[c]:
            c += 1
    return [[U[i][j] for i in range(ncols)] for j in range(c, ncols)]


def hermite_rows(vectors: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by ``vectors`` (zero rows dropped)."""
    M = [list(v) for v in vectors if any(v)]
    if not M:
        return []
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[piv] = M[piv], M[r]
            clean = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c]:
                        clean = False
            if clean:
                break
        if r < len(M) and M[r][c]:
            if M[r][c] < 0:
                M[r] = [-a for a in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
            if r == len(M):
                break
    return [row for row in M[:r]]


@dataclass(frozen=True)
class ExponentLattice:
    thetas: tuple[Fraction, ...]
    basis: tuple[tuple[int, ...], ...]

    def contains(self, v: Sequence[int]) -> bool:
        prod = Fraction(1)
        for t, e in zip(self.thetas, v):
            prod *= t**e
        return prod == 1


def exp_lattice(thetas: Iterable) -> ExponentLattice:
    """All integer vectors ``v`` with ``prod theta_i^(v_i) = 1``."""
    ths = tuple(Fraction(t) for t in thetas)
    if any(t == 0 for t in ths):
        raise ValueError("zero base has no exponent lattice")
    s = len(ths)
    if not s:
        return ExponentLattice(ths, ())
    exps = []
    for t in ths:
        e = dict(_factor(abs(t.numerator)))
        for p, k in _factor(t.denominator).items():
            e[p] = e.get(p, 0) - k
        exps.append(e)
    primes = sorted({p for e in exps for p in e})
    rows = [[e.get(p, 0) for e in exps] + [0] for p in primes]
    rows.append([1 if t < 0 else 0 for t in ths] + [2])
    ker = integer_kernel(rows, s + 1)
    basis = hermite_rows(v[:s] for v in ker)
    return ExponentLattice(ths, tuple(tuple(v) for v in basis))


def evar_name(theta: Fraction) -> str:
    theta = Fraction(theta)
    sign = "m" if theta < 0 else ""
    body = f"{abs(theta.numerator)}" + (f"_{theta.denominator}" if theta.denominator != 1 else "")
    return f"e_{sign}{body}"


def _binomial(v: Sequence[int], names: Sequence[str]) -> MultiPoly:
    pos = MultiPoly.const(1)
    neg = MultiPoly.const(1)
    for e, name in zip(v, names):
        if e > 0:
            pos = pos * MultiPoly.var(name) ** e
        elif e < 0:
            neg = neg * MultiPoly.var(name) ** (-e)
    return pos - neg


def lattice_ideal(lat: ExponentLattice, names: Sequence[str] | None = None,
                  step_cap: int | None = DEFAULT_STEP_CAP) -> IdealBasis:
    """Reduced Groebner basis (grevlex) of the relation ideal of ``theta_i^n``."""
    names = list(names) if names is not None else [evar_name(t) for t in lat.thetas]
    order = MonomialOrder.grevlex(names)
    gens = [_binomial(v, names) for v in lat.basis]
    if not gens:
        return IdealBasis([], order, reduced=True)
    w = "w"
    while w in names:
        w += "_"
    prod = MultiPoly.var(w)
    for name in names:
        prod = prod * MultiPoly.var(name)
    sat = eliminate(gens + [prod - 1], [w], reduced=True, step_cap=step_cap, kept=names)
    return IdealBasis(sat.generators, order, reduced=True, stats=sat.stats)
