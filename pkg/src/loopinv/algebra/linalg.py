"""Exact Gaussian elimination.

The elimination routines are generic over any field whose elements support
``+ - * /`` and truthiness for nonzero tests (``Fraction`` and ``RatFunc``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import InconsistentSystem
from .multipoly import MultiPoly


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel(rows: Sequence[Sequence], ncols: int, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    """Basis of the right kernel ``{v : rows @ v = 0}``."""
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


@dataclass
class LinearSolution:
    """Solved unknowns; ``free`` lists unknowns left as parameters of the solution."""

    values: dict[str, MultiPoly]
    free: list[str] = field(default_factory=list)

    @property
    def underdetermined(self) -> bool:
        return bool(self.free)


def _as_fraction(a) -> Fraction:
    if isinstance(a, MultiPoly):
        if not a.is_constant():
            raise ValueError(f"coefficient {a} depends on parameters; only constant matrices are supported")
        return a.constant_value()
    return Fraction(a)


def solve_linear_system(A: Sequence[Sequence], b: Sequence, unknowns: Sequence[str]) -> LinearSolution:
    """Solve ``A @ unknowns = b`` where ``b`` may hold polynomials in parameters.

    Raises :class:`InconsistentSystem` when some equation reduces to a nonzero
    right-hand side with zero coefficients.
    """
    n = len(unknowns)
    mat = [[_as_fraction(a) for a in row] for row in A]
    rhs = [MultiPoly.coerce(v) for v in b]
    if len(mat) != len(rhs):
        raise ValueError("matrix and right-hand side differ in length")
    rows = [list(r) + [v] for r, v in zip(mat, rhs)]
    # elimination on the coefficient part, carrying polynomial right-hand sides
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for row in rows[r:]:
        if row[n]:
            raise InconsistentSystem(f"inconsistent equation 0 = {row[n]}")
    free = [unknowns[c] for c in range(n) if c not in pivots]
    values: dict[str, MultiPoly] = {}
    for row, p in zip(rows[:r], pivots):
        val = row[n]
        for c in range(n):
            if c != p and row[c]:
                val = val - MultiPoly.var(unknowns[c]) * row[c]
        values[unknowns[p]] = val
    for name in free:
        values[name] = MultiPoly.var(name)
    return LinearSolution(values, free)
