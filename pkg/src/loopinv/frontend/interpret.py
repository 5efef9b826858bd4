"""Direct execution of loop bodies over any field-like value domain."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator, Mapping

from ..algebra.multipoly import MultiPoly
from ..errors import InterpretationError
from .parser import BinOp, Expr, LoopProgram, Neg, Num, Pow, Var


def eval_expr(e: Expr, env: Mapping[str, object], const: Callable[[Fraction], object] = lambda c: c):
    if isinstance(e, Num):
        return const(e.value)
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise InterpretationError(f"variable {e.name!r} has no value") from None
    if isinstance(e, Neg):
        return -eval_expr(e.operand, env, const)
    if isinstance(e, Pow):
        return eval_expr(e.base, env, const) ** e.exponent
    a = eval_expr(e.left, env, const)
    b = eval_expr(e.right, env, const)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if not b:
        raise ZeroDivisionError("division by zero")
    return a / b


def iterate(program: LoopProgram, init: Mapping[str, object], const: Callable = lambda c: c,
            counter_value: Callable[[int], object] = Fraction) -> Iterator[dict[str, object]]:
    """Yield the variable store before iteration 0, 1, 2, ... (endless)."""
    state = dict(init)
    n = 0
    while True:
        yield dict(state)
        state[program.counter] = counter_value(n)
        for a in program.assignments:
            try:
                state[a.target] = eval_expr(a.expr, state, const)
            except ZeroDivisionError:
                raise InterpretationError(f"division by zero in the update of {a.target!r}", n) from None
        n += 1


def run(program: LoopProgram, init: Mapping[str, object], iterations: int, const: Callable = lambda c: c,
        counter_value: Callable[[int], object] = Fraction) -> list[dict[str, object]]:
    """Stores at n = 0 .. iterations (inclusive)."""
    out = []
    for k, state in enumerate(iterate(program, init, const, counter_value)):
        state.pop(program.counter, None)
        out.append(state)
        if k >= iterations:
            break
    return out


def run_exact(program: LoopProgram, init: Mapping[str, Fraction], iterations: int) -> list[dict[str, Fraction]]:
    init = {k: Fraction(v) for k, v in init.items()}
    return run(program, init, iterations)


def run_symbolic(program: LoopProgram, init: Mapping[str, MultiPoly], iterations: int) -> list[dict[str, MultiPoly]]:
    """Unroll with polynomial values; division is only allowed by constants."""
    def counter(n: int) -> MultiPoly:
        return MultiPoly.const(n)

    try:
        return run(program, {k: MultiPoly.coerce(v) for k, v in init.items()}, iterations, MultiPoly.const, counter)
    except ValueError as exc:
        raise InterpretationError(f"symbolic unrolling failed: {exc}") from None
