"""Ideals of algebraic relations among closed-form sequences.

Each closed form is written as ``v = f/g`` with ``theta^n`` replaced by an
e-variable, ``ffac(n + zeta)`` by an h-variable and ``n`` by the counter
variable.  The relation ideal is the elimination ideal of

    I_theta + <g_1 v_1 - f_1, ..., g_m v_m - f_m>

where ``I_theta`` is the relation ideal of the exponentials.  The factorial
sequences contribute no further relations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..algebra.multipoly import MultiPoly
from ..algebra.varids import NameRegistry, VarKind
from ..recurrences.closed_form import ClosedForm
from .groebner import (
    DEFAULT_STEP_CAP,
    IdealBasis,
    MonomialOrder,
    buchberger,
    eliminate,
    normal_form,
)
from .lattice import evar_name, exp_lattice, lattice_ideal


def hvar_name(zeta: Fraction) -> str:
    zeta = Fraction(zeta)
    body = f"{zeta.numerator}" + (f"_{zeta.denominator}" if zeta.denominator != 1 else "")
    return f"h_{body}"


def _uniq(reg: NameRegistry, base: str, kind: VarKind) -> str:
    return reg.fresh(base, kind).name


def relation_system(cfs: Sequence[ClosedForm], keep: Sequence[str]) -> tuple[list[MultiPoly], list[str], list[str]]:
    """Generators, eliminated variables and kept variables for the relation ideal."""
    if not cfs:
        return [], [], list(keep)
    counters = {cf.counter for cf in cfs}
    if len(counters) != 1:
        raise ValueError(f"closed forms use different counters: {sorted(counters)}")
    counter = counters.pop()
    params = sorted({p for cf in cfs for p in cf.parameters()})
    solver = sorted({p for cf in cfs for p in cf.solver_params})
    prog = [cf.variable for cf in cfs]
    reserved = set(params) | set(prog) | set(keep) | {counter}
    reg = NameRegistry(reserved)
    thetas = sorted({s.theta for cf in cfs for s in cf.summands if s.theta != 1})
    zetas = sorted({f.zeta for cf in cfs for s in cf.summands for f in s.factors})
    evars = {t: _uniq(reg, evar_name(t), VarKind.EXPONENTIAL) for t in thetas}
    hvars = {z: _uniq(reg, hvar_name(z), VarKind.FACTORIAL) for z in zetas}

    gens: list[MultiPoly] = []
    if thetas:
        gens.extend(lattice_ideal(exp_lattice(thetas), [evars[t] for t in thetas]).generators)
    dens = []
    for cf in cfs:
        f, g = cf.as_fraction(evars, hvars)
        gens.append(g * MultiPoly.var(cf.variable) - f)
        if not g.is_constant():
            dens.append(g)
    elim = list(solver) + [evars[t] for t in thetas] + [hvars[z] for z in zetas] + [counter]
    if dens:
        w = _uniq(reg, "w", VarKind.AUXILIARY)
        prod = MultiPoly.var(w)
        for g in dens:
            prod = prod * g
        gens.append(prod - 1)
        elim.insert(0, w)
    kept = [v for v in keep] + [p for p in params if p not in solver and p not in keep]
    return gens, elim, kept


def algebraic_relations(cfs: Sequence[ClosedForm], keep: Sequence[str] | None = None, reduced: bool = True,
                        step_cap: int | None = DEFAULT_STEP_CAP) -> IdealBasis:
    """Ideal of all polynomial relations among the sequences, in the kept variables
    and the symbolic parameters."""
    keep = [cf.variable for cf in cfs] if keep is None else list(keep)
    gens, elim, kept = relation_system(cfs, keep)
    if not gens:
        return IdealBasis([], MonomialOrder.grevlex(kept), reduced=True)
    return eliminate(gens, elim, reduced=reduced, step_cap=step_cap, kept=kept)


def prune_redundant(basis: IdealBasis, step_cap: int | None = DEFAULT_STEP_CAP) -> IdealBasis:
    """Drop generators that lie in the ideal of the remaining ones."""
    gens = list(basis.generators)
    i = len(gens) - 1
    dropped = False
    while i >= 0 and len(gens) > 1:
        rest = gens[:i] + gens[i + 1 :]
        gb = buchberger(rest, basis.order, reduced=True, step_cap=step_cap)
        if not normal_form(gens[i], gb):
            gens = rest
            dropped = True
        i -= 1
    if not dropped:
        return basis
    return IdealBasis(gens, basis.order, reduced=basis.reduced, groebner=False, stats=dict(basis.stats))


def invariant_ideal(closed_forms: Mapping[str, ClosedForm] | Iterable[ClosedForm], relevant: Sequence[str] | None = None,
                    reduce: bool = False, step_cap: int | None = DEFAULT_STEP_CAP) -> IdealBasis:
    """Polynomial invariants over the relevant variables and the initial-value parameters.

    Without ``reduce`` the result is a minimal Groebner basis whose tails are
    left unreduced; with ``reduce`` it is reduced and generators implied by the
    others are dropped.
    """
    if isinstance(closed_forms, Mapping):
        cfs = list(closed_forms.values())
    else:
        cfs = list(closed_forms)
    if relevant is not None:
        wanted = set(relevant)
        cfs = [cf for cf in cfs if cf.variable in wanted]
        keep = [v for v in relevant if any(cf.variable == v for cf in cfs)]
    else:
        keep = [cf.variable for cf in cfs]
    basis = algebraic_relations(cfs, keep, reduced=reduce, step_cap=step_cap)
    if reduce and len(basis) > 1:
        basis = prune_redundant(basis, step_cap)
    return basis
