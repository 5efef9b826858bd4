"""Recurrence data model and the closed-form solver."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from ..algebra.linalg import solve_linear_system
from ..algebra.multipoly import MultiPoly
from ..algebra.univariate import UniPoly, integer_roots, linear_factor_split, rational_roots
from ..errors import InconsistentSystem, Unsolvable
from ..ore import OreOperator
from .closed_form import ClosedForm, HypergeometricTerm, Summand
from .hyper import DEFAULT_DEGREE_CAP, hypergeometric_solution_space

CFINITE = "CFinite"
HYPERGEOMETRIC = "Hypergeometric"
EXTENDED = "ExtendedPSolvable"
UNSOLVABLE = "Unsolvable"


@dataclass(frozen=True)
class Recurrence:
    """``operator(v)(n) = inhomogeneous(n)`` for ``n >= start_offset``.

    ``initial_values[i]`` is ``v(start_offset + i)`` as a polynomial in the
    initial-value and loop-constant parameters.  The operator is monic.
    """

    operator: OreOperator
    variable: str
    initial_values: tuple[MultiPoly, ...]
    start_offset: int = 0
    inhomogeneous: MultiPoly = field(default_factory=MultiPoly.zero)
    counter: str = "n"

    def __post_init__(self):
        object.__setattr__(self, "operator", self.operator.monic())
        object.__setattr__(self, "initial_values", tuple(MultiPoly.coerce(v) for v in self.initial_values))
        object.__setattr__(self, "inhomogeneous", MultiPoly.coerce(self.inhomogeneous))
        if len(self.initial_values) < self.order:
            raise ValueError(f"{self.variable}: {self.order} initial values needed, got {len(self.initial_values)}")

    @property
    def order(self) -> int:
        return self.operator.order

    @property
    def is_homogeneous(self) -> bool:
        return not self.inhomogeneous

    def _rhs(self, n: int) -> MultiPoly:
        return self.inhomogeneous.subs({self.counter: n}) if self.inhomogeneous else MultiPoly.zero()

    def values(self, count: int) -> list[MultiPoly]:
        """``v(start_offset) .. v(start_offset + count - 1)`` by unrolling."""
        vals = list(self.initial_values[: max(self.order, 0)])
        d = self.order
        coeffs = self.operator.coeffs
        while len(vals) < count:
            n = self.start_offset + len(vals) - d
            nxt = self._rhs(n)
            for i in range(d):
                c = coeffs[i]
                if c:
                    nxt = nxt - vals[n - self.start_offset + i] * c(n)
            vals.append(nxt)
        return vals[:count]

    def advance(self, start: int) -> Recurrence:
        """Same sequence with initial values recorded from ``start`` on."""
        if start <= self.start_offset:
            return self
        shift = start - self.start_offset
        vals = self.values(shift + self.order)[shift:]
        return replace(self, initial_values=tuple(vals), start_offset=start)

    def __str__(self) -> str:
        rhs = f" = {self.inhomogeneous}" if self.inhomogeneous else " = 0"
        return f"[{self.operator}]({self.variable}){rhs}  (n >= {self.start_offset})"


@dataclass(frozen=True)
class SolverReport:
    status: str
    closed_form: ClosedForm | None = None
    reason: str | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != UNSOLVABLE


def homogenize(rec: Recurrence) -> Recurrence:
    """Annihilate a polynomial right-hand side by ``Delta^(deg + 1)``."""
    if rec.is_homogeneous:
        return rec
    deg = rec.inhomogeneous.degree(rec.counter) if rec.counter in rec.inhomogeneous.used_variables() else 0
    op = OreOperator.delta(deg + 1) * rec.operator
    vals = rec.values(op.order)
    return Recurrence(op, rec.variable, tuple(vals), rec.start_offset, MultiPoly.zero(), rec.counter)


def strip_trailing_zeros(rec: Recurrence) -> Recurrence:
    """Drop vanishing trailing coefficients: ``l'_j(x) = l_{j+m}(x - m)``."""
    coeffs = rec.operator.coeffs
    m = 0
    while m < len(coeffs) - 1 and not coeffs[m]:
        m += 1
    if not m:
        return rec
    op = OreOperator([c.shift(-m) for c in coeffs[m:]])
    rhs = rec.inhomogeneous.subs({rec.counter: MultiPoly.var(rec.counter) - m}) if rec.inhomogeneous else rec.inhomogeneous
    return Recurrence(op, rec.variable, rec.initial_values[m:], rec.start_offset + m, rhs, rec.counter)


def _fit(rec: Recurrence, basis: Sequence[tuple[Fraction, tuple, UniPoly, UniPoly]], names: Sequence[str]) -> tuple[dict[str, MultiPoly], list[str]]:
    """Solve for the coefficients of ``basis`` from the initial values."""
    n0 = rec.start_offset
    rows = []
    for i in range(rec.order):
        n = n0 + i
        row = []
        for theta, factors, num, den in basis:
            v = theta**n * num(n) / den(n)
            for f in factors:
                v *= f(n)
            row.append(v)
        rows.append(row)
    try:
        sol = solve_linear_system(rows, list(rec.initial_values[: rec.order]), list(names))
    except InconsistentSystem as exc:
        raise Unsolvable(Unsolvable.INCONSISTENT_INITIAL_VALUES, str(exc), rec.variable) from exc
    return sol.values, sol.free


def initial_value_system(rec: Recurrence, terms: Sequence[HypergeometricTerm],
                         names: Sequence[str] | None = None) -> list[tuple[int, MultiPoly, MultiPoly]]:
    """Equations ``sum_i k_i h_i(n) = v(n)`` for the first ``order`` indices.

    Returns ``(n, lhs, rhs)`` triples with ``lhs`` linear in the unknowns.
    """
    names = list(names) if names is not None else _solver_names(rec, len(terms))
    out = []
    for i in range(rec.order):
        n = rec.start_offset + i
        lhs = MultiPoly.zero()
        for h, k in zip(terms, names):
            lhs = lhs + MultiPoly.var(k) * h(n)
        out.append((n, lhs, rec.initial_values[i]))
    return out


def _solver_names(rec: Recurrence, count: int) -> list[str]:
    return [f"k_{rec.variable}_{i + 1}" for i in range(count)]


def solve_cfinite(rec: Recurrence) -> ClosedForm:
    """Closed form ``sum p_i(n) theta_i^n`` of a constant-coefficient recurrence."""
    rec = strip_trailing_zeros(homogenize(rec))
    if not rec.operator.is_constant_coefficient():
        raise ValueError("operator has non-constant coefficients")
    x = rec.counter
    if rec.order == 0:
        return ClosedForm(rec.variable, x, (), rec.start_offset)
    chi = UniPoly([c.constant_value() for c in rec.operator.coeffs], "t")
    roots = rational_roots(chi)
    if sum(m for _, m in roots) != rec.order:
        _, residual = linear_factor_split(chi)
        raise Unsolvable(Unsolvable.NON_RATIONAL_EIGENVALUE, str(residual).replace("x", "t"), rec.variable)
    basis = []
    for theta, m in roots:
        for j in range(m):
            basis.append((theta, (), UniPoly.x() ** j, UniPoly((1,))))
    names = _solver_names(rec, len(basis))
    vals, free = _fit(rec, basis, names)
    summands = []
    for (theta, _, num, _), name in zip(basis, names):
        summands.append(Summand(theta, (), vals[name] * num.to_multi(x)))
    return ClosedForm.build(rec.variable, x, summands, rec.start_offset, free)


def _verify(rec: Recurrence, cf: ClosedForm, extra: int = 6) -> None:
    n0 = rec.start_offset
    d = rec.order
    known = len(rec.initial_values)
    needed = n0 + max(d, known) + extra
    vals = [cf.evaluate_symbolic(n) for n in range(n0, needed)]
    for i in range(known):
        if vals[i] != rec.initial_values[i]:
            raise AssertionError(f"{rec.variable}: closed form disagrees with v({n0 + i})")
    coeffs = rec.operator.coeffs
    for n in range(n0, needed - d):
        acc = MultiPoly.zero()
        for i, c in enumerate(coeffs):
            if c:
                acc = acc + vals[n - n0 + i] * c(n)
        if acc:
            raise AssertionError(f"{rec.variable}: closed form does not satisfy the recurrence at n = {n}")


def assemble_closed_form(rec: Recurrence, degree_cap: int = DEFAULT_DEGREE_CAP) -> SolverReport:
    """Solve a recurrence into a sum of hypergeometric terms."""
    try:
        return _assemble(rec, degree_cap)
    except Unsolvable as exc:
        return SolverReport(UNSOLVABLE, None, exc.reason, exc.detail)


def _assemble(rec: Recurrence, degree_cap: int) -> SolverReport:
    rec = strip_trailing_zeros(homogenize(rec))
    L = rec.operator
    rec = rec.advance(max(rec.start_offset, L.validity_offset()))
    x = rec.counter
    if rec.order == 0 or L.is_constant_coefficient():
        cf = solve_cfinite(rec)
        _verify(rec, cf)
        return SolverReport(CFINITE, cf)
    classes = hypergeometric_solution_space(L, degree_cap)
    dim = sum(c.dimension for c in classes)
    if dim < rec.order:
        raise Unsolvable(
            Unsolvable.NO_HYPERGEOMETRIC_BASIS,
            f"{dim} independent hypergeometric solutions for an operator of order {rec.order}",
            rec.variable,
        )
    poles = [p for c in classes if c.denom.degree >= 1 for p in integer_roots(c.denom) if p >= 0]
    if poles:
        rec = rec.advance(max(poles) + 1)
    basis = [(c.theta, c.factors, num, c.denom) for c in classes for num in c.numerators]
    names = _solver_names(rec, len(basis))
    vals, free = _fit(rec, basis, names)
    summands = []
    for (theta, factors, num, den), name in zip(basis, names):
        summands.append(Summand(theta, factors, vals[name] * num.to_multi(x), den))
    cf = ClosedForm.build(rec.variable, x, summands, rec.start_offset, free)
    _verify(rec, cf)
    if cf.is_cfinite():
        status = CFINITE
    elif len({s.key for s in cf.summands}) <= 1:
        status = HYPERGEOMETRIC
    else:
        status = EXTENDED
    return SolverReport(status, cf)


__all__ = [
    "Recurrence",
    "SolverReport",
    "homogenize",
    "strip_trailing_zeros",
    "solve_cfinite",
    "assemble_closed_form",
    "initial_value_system",
    "CFINITE",
    "HYPERGEOMETRIC",
    "EXTENDED",
    "UNSOLVABLE",
]
