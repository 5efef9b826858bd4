"""Compile a loop body into one linear recurrence per evolving variable.

One iteration is executed symbolically with forward substitution, so every
new value is a rational function of the old values (rational in the counter
only in its denominators).  A variable whose new value is the old value of
another variable is a *register* (``t := v`` before ``v`` changes) and holds
``v(n - delay)``; a variable whose new value equals another's new value is
an alias with delay 0.  Every other assigned variable is a *root*: its update
must be affine in its own old value and the old values of its own registers,
which yields

    v(n+1) = c_0(n) v(n) + sum_r c_r(n) v(n - delta_r) + p(n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..algebra.multipoly import MultiPoly
from ..algebra.univariate import RatFunc, UniPoly, uni_gcd, uni_lcm
from ..algebra.varids import NameRegistry, VarKind
from ..errors import NonRationalCoefficient, NotSelfContained
from ..ore import OreOperator
from ..recurrences.solve import CFINITE, Recurrence, SolverReport
from .interpret import eval_expr, run_symbolic
from .parser import LoopProgram, expr_variables

SYMBOLIC = "sym"


class _Sym:
    """``num / den``: ``num`` polynomial in old values, parameters and the counter; ``den`` in the counter."""

    __slots__ = ("num", "den", "counter")

    def __init__(self, num: MultiPoly, counter: str, den: UniPoly | None = None):
        self.num = num
        self.counter = counter
        self.den = den if den is not None else UniPoly((1,), "x")

    def _new(self, num: MultiPoly, den: UniPoly | None = None) -> _Sym:
        return _Sym(num, self.counter, den)

    def _lift(self, other) -> _Sym:
        return other if isinstance(other, _Sym) else self._new(MultiPoly.const(other))

    def __add__(self, other) -> _Sym:
        other = self._lift(other)
        if self.den == other.den:
            return self._new(self.num + other.num, self.den)
        L = uni_lcm(self.den, other.den)
        a = self.num * (L // self.den).to_multi(self.counter)
        b = other.num * (L // other.den).to_multi(self.counter)
        return self._new(a + b, L)

    def __neg__(self) -> _Sym:
        return self._new(-self.num, self.den)

    def __sub__(self, other) -> _Sym:
        return self + (-self._lift(other))

    def __mul__(self, other) -> _Sym:
        other = self._lift(other)
        return self._new(self.num * other.num, self.den * other.den)._reduced()

    def __pow__(self, k: int) -> _Sym:
        return self._new(self.num**k, self.den**k)

    def __truediv__(self, other) -> _Sym:
        other = self._lift(other)
        used = set(other.num.used_variables())
        if used - {self.counter}:
            raise NonRationalCoefficient(
                f"division by {other.num}, which depends on {', '.join(sorted(used - {self.counter}))}; "
                "divisors may only depend on the loop counter"
            )
        q = UniPoly(UniPoly.from_multi(other.num, self.counter).coeffs, "x")
        num = self.num * other.den.to_multi(self.counter)
        den = self.den * q
        lc = den.lead
        return self._new(num * (1 / lc), den.monic())._reduced()

    def __bool__(self) -> bool:
        return bool(self.num)

    def _reduced(self) -> _Sym:
        if self.den.degree < 1 or not self.num:
            return self
        # cancel counter factors shared by every term of the numerator
        content = None
        for coeff in self.num.coefficients_in([v for v in self.num.variables if v != self.counter]).values():
            u = UniPoly(UniPoly.from_multi(coeff, self.counter).coeffs, "x")
            content = u if content is None else uni_gcd(content, u)
            if content.degree < 1:
                return self
        g = uni_gcd(content, self.den)
        if g.degree < 1:
            return self
        parts = self.num.coefficients_in([v for v in self.num.variables if v != self.counter])
        names = [v for v in self.num.variables if v != self.counter]
        num = MultiPoly.zero()
        for exp, coeff in parts.items():
            u = UniPoly(UniPoly.from_multi(coeff, self.counter).coeffs, "x").exact_div(g)
            mono = MultiPoly.const(1)
            for name, e in zip(names, exp):
                if e:
                    mono = mono * MultiPoly.var(name) ** e
            num = num + mono * u.to_multi(self.counter)
        return self._new(num, self.den.exact_div(g))

    def __eq__(self, other) -> bool:
        if not isinstance(other, _Sym):
            return NotImplemented
        return self.num * other.den.to_multi(self.counter) == other.num * self.den.to_multi(self.counter)

    def __hash__(self):  # pragma: no cover - not used as a key
        return id(self)


@dataclass(frozen=True)
class Register:
    """``variable(n) = root(n - delay)`` for ``n >= valid_from``."""

    variable: str
    root: str
    delay: int
    valid_from: int


@dataclass
class RecurrenceSystem:
    program: LoopProgram
    recurrences: dict[str, Recurrence]
    registers: dict[str, Register]
    constants: list[str]
    temporaries: set[str]
    params: list[str]
    initial_bindings: dict[str, MultiPoly]
    kinds: dict[str, VarKind] = field(default_factory=dict)

    @property
    def counter(self) -> str:
        return self.program.counter

    @property
    def tracked(self) -> list[str]:
        """Assigned variables that are not temporaries, in source order."""
        return [v for v in self.program.assigned if v not in self.temporaries]


def initial_bindings(program: LoopProgram, init: Mapping[str, object] | None = None) -> tuple[dict[str, MultiPoly], list[str]]:
    """Initial store as polynomials, and the names of symbolic parameters.

    ``init`` maps a variable to a rational, to ``"sym"`` or to a parameter
    name.  Assigned variables without a value become ``<name>_0``; loop
    constants without a value stay symbolic under their own name.
    """
    init = dict(init or {})
    names = program.variables
    reg = NameRegistry(reserved=set(names) | {program.counter})
    bindings: dict[str, MultiPoly] = {}
    params: list[str] = []
    assigned = set(program.assigned)
    for v in names:
        val = init.get(v, SYMBOLIC)
        if isinstance(val, str) and val != SYMBOLIC:
            try:
                val = Fraction(val)
            except ValueError:
                pass
        if isinstance(val, str):
            if val == SYMBOLIC:
                name = reg.fresh(f"{v}_0", VarKind.INITIAL_VALUE).name if v in assigned else v
            else:
                if val in assigned or val == program.counter:
                    raise ValueError(f"initial value {val!r} of {v!r} clashes with a program variable")
                name = val
                reg.register(name, VarKind.INITIAL_VALUE)
            bindings[v] = MultiPoly.var(name)
            if name not in params:
                params.append(name)
        else:
            bindings[v] = MultiPoly.const(Fraction(val))
    return bindings, params


def _one_iteration(program: LoopProgram, bindings: Mapping[str, MultiPoly]) -> dict[str, _Sym]:
    counter = program.counter
    env: dict[str, _Sym] = {}
    assigned = set(program.assigned)
    for v in program.variables:
        if v in assigned or not bindings[v].is_constant():
            env[v] = _Sym(MultiPoly.var(v), counter)
        else:
            env[v] = _Sym(bindings[v], counter)
    env[counter] = _Sym(MultiPoly.var(counter), counter)
    for a in program.assignments:
        env[a.target] = eval_expr(a.expr, env, lambda c: _Sym(MultiPoly.const(c), counter))
    return {v: env[v] for v in program.assigned}


def _classify_registers(program: LoopProgram, new: dict[str, _Sym]) -> dict[str, Register]:
    assigned = program.assigned
    link: dict[str, tuple[str, str]] = {}
    for i, t in enumerate(assigned):
        val = new[t]
        target = None
        for u in assigned:
            if u != t and val == _Sym(MultiPoly.var(u), program.counter):
                target = (u, "copy")
                break
        if target is None and not val == _Sym(MultiPoly.var(t), program.counter):
            for u in assigned[:i]:
                if val == new[u]:
                    target = (u, "alias")
                    break
        if target is not None:
            link[t] = target

    out: dict[str, Register] = {}

    def resolve(t: str, stack: tuple[str, ...]) -> Register:
        if t in out:
            return out[t]
        if t in stack:
            cycle = stack[stack.index(t):]
            raise NotSelfContained(f"registers {', '.join(cycle)} copy each other in a cycle", t)
        u, kind = link[t]
        if u in link:
            base = resolve(u, stack + (t,))
            root, delay, valid = base.root, base.delay, base.valid_from
        else:
            root, delay, valid = u, 0, 0
        if kind == "copy":
            reg = Register(t, root, delay + 1, valid + 1)
        else:
            reg = Register(t, root, delay, max(valid, 1))
        out[t] = reg
        return reg

    for t in link:
        resolve(t, ())
    return out


def _rational(coeff: MultiPoly, den: UniPoly, counter: str) -> RatFunc:
    num = UniPoly(UniPoly.from_multi(coeff, counter).coeffs, "x")
    return RatFunc(num, den)


def _poly_over(q: MultiPoly, den: UniPoly, counter: str) -> MultiPoly | None:
    if den.degree < 1:
        return q * (1 / den.lead)
    others = [v for v in q.variables if v != counter]
    out = MultiPoly.zero()
    for exp, coeff in q.coefficients_in(others).items():
        u = UniPoly(UniPoly.from_multi(coeff, counter).coeffs, "x")
        quo, rem = divmod(u, den)
        if rem:
            return None
        mono = MultiPoly.const(1)
        for name, e in zip(others, exp):
            if e:
                mono = mono * MultiPoly.var(name) ** e
        out = out + mono * quo.to_multi(counter)
    return out


def _root_recurrence(v: str, val: _Sym, program: LoopProgram,
                     registers: dict[str, Register]) -> tuple[OreOperator, MultiPoly, int, int]:
    counter = program.counter
    evolving = program.assigned
    own = {t: r for t, r in registers.items() if r.root == v}
    parts = val.num.coefficients_in(evolving)
    c0 = RatFunc(0)
    by_delay: dict[int, RatFunc] = {}
    valid = 0
    inhom = MultiPoly.zero()
    for exp, coeff in parts.items():
        mono = {name: e for name, e in zip(evolving, exp) if e}
        if not mono:
            inhom = inhom + coeff
            continue
        strangers = [s for s in mono if s != v and s not in own]
        if strangers:
            s = strangers[0]
            owner = registers[s].root if s in registers else s
            raise NotSelfContained(
                f"the update of {v!r} reads {s!r}" + (f" (history of {owner!r})" if owner != s else "")
                + "; coupled updates are not supported",
                v,
            )
        if sum(mono.values()) > 1:
            raise NonRationalCoefficient(f"the update of {v!r} is not linear in its own history", v)
        used_params = set(coeff.used_variables()) - {counter}
        if used_params:
            raise NonRationalCoefficient(
                f"the update of {v!r} has coefficients depending on {', '.join(sorted(used_params))}; "
                "give them concrete values with --init",
                v,
            )
        (s,) = mono
        r = _rational(coeff, val.den, counter)
        if s == v:
            c0 = c0 + r
        else:
            reg = own[s]
            by_delay[reg.delay] = by_delay.get(reg.delay, RatFunc(0)) + r
            valid = max(valid, reg.valid_from)
    p = _poly_over(inhom, val.den, counter)
    if p is None:
        raise NonRationalCoefficient(
            f"the update of {v!r} adds a term with a non-polynomial dependence on {counter!r}", v
        )
    D = max([d for d, c in by_delay.items() if c] + [0])
    coeffs = [RatFunc(0)] * (D + 2)
    coeffs[D + 1] = RatFunc(1)
    coeffs[D] = coeffs[D] - c0.shift(D)
    for d, c in by_delay.items():
        coeffs[D - d] = coeffs[D - d] - c.shift(D)
    rhs = p.subs({counter: MultiPoly.var(counter) + D}) if D else p
    return OreOperator(coeffs), rhs, D, valid


def extract_recurrences(program: LoopProgram, init: Mapping[str, object] | None = None) -> RecurrenceSystem:
    """Per-variable recurrences with initial values from symbolic unrolling."""
    bindings, params = initial_bindings(program, init)
    new = _one_iteration(program, bindings)
    registers = _classify_registers(program, new)
    roots = [v for v in program.assigned if v not in registers]
    shapes = {}
    need = 0
    for v in roots:
        op, rhs, D, valid = _root_recurrence(v, new[v], program, registers)
        start = valid - D
        shapes[v] = (op, rhs, D, start)
        need = max(need, start + D)
    states = run_symbolic(program, bindings, need)
    recs = {}
    for v in roots:
        op, rhs, D, start = shapes[v]
        ivs = tuple(states[i][v] for i in range(start, start + D + 1))
        recs[v] = Recurrence(op, v, ivs, start, rhs, program.counter)
    # temporaries: registers read by root updates or by other temporaries
    reads: dict[str, set[str]] = {}
    for a in program.assignments:
        reads.setdefault(a.target, set()).update(expr_variables(a.expr))
    temps: set[str] = set()
    frontier = [r for v in roots for r in reads.get(v, ()) if r in registers]
    while frontier:
        t = frontier.pop()
        if t in temps:
            continue
        temps.add(t)
        frontier.extend(r for r in reads.get(t, ()) if r in registers)
    kinds = {v: VarKind.PROGRAM for v in program.assigned}
    kinds.update({p: VarKind.INITIAL_VALUE for p in params})
    kinds[program.counter] = VarKind.LOOP_COUNTER
    return RecurrenceSystem(program, recs, registers, program.constants, temps, params, bindings, kinds)


@dataclass(frozen=True)
class Classification:
    kind: str  # "PSolvable", "ExtendedPSolvable", "Unsupported"
    variable: str | None = None
    reason: str | None = None

    def __str__(self) -> str:
        if self.kind == "Unsupported":
            return f"Unsupported({self.variable}: {self.reason})"
        return self.kind


def classify(system: RecurrenceSystem, reports: Mapping[str, SolverReport]) -> Classification:
    """PSolvable when every sequence is C-finite, ExtendedPSolvable when all are solved."""
    kind = "PSolvable"
    for v in system.recurrences:
        rep = reports[v]
        if not rep.ok:
            return Classification("Unsupported", v, rep.reason)
        if rep.status != CFINITE:
            kind = "ExtendedPSolvable"
    return Classification(kind)
