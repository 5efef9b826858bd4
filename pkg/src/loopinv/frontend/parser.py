"""Parser for single-path loops::

    while <guard> do
      x := <expr>;
      ...
    end

The guard is read and discarded.  Expressions use rational constants,
identifiers, ``+ - * /``, unary minus, parentheses and ``^`` with a
nonnegative integer exponent.  ``n := n + 1`` on the counter is recognised
and moved to the end of the iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ..algebra.lexer import Token, TokenStream, tokenize
from ..errors import OutOfModelError, ParseError

_OUT_OF_MODEL = {"if", "then", "else", "elif", "for", "while", "goto", "break", "continue", "return", "repeat"}


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, BinOp, Neg, Pow]


def expr_variables(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, BinOp):
        return expr_variables(e.left) | expr_variables(e.right)
    if isinstance(e, (Neg,)):
        return expr_variables(e.operand)
    if isinstance(e, Pow):
        return expr_variables(e.base)
    return set()


def format_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"-({format_expr(e.operand)})"
    if isinstance(e, Pow):
        return f"({format_expr(e.base)})^{e.exponent}"
    return f"({format_expr(e.left)} {e.op} {format_expr(e.right)})"


@dataclass(frozen=True)
class Assignment:
    target: str
    expr: Expr
    line: int = 0


@dataclass(frozen=True)
class LoopProgram:
    """Loop body in source order (without the counter increment)."""

    assignments: tuple[Assignment, ...]
    counter: str = "n"
    guard: str = "true"
    declared_init: dict = field(default_factory=dict)

    @property
    def assigned(self) -> list[str]:
        return list(dict.fromkeys(a.target for a in self.assignments))

    @property
    def variables(self) -> list[str]:
        seen: dict[str, None] = {}
        for a in self.assignments:
            for v in sorted(expr_variables(a.expr)):
                seen.setdefault(v, None)
            seen.setdefault(a.target, None)
        seen.pop(self.counter, None)
        return list(seen)

    @property
    def constants(self) -> list[str]:
        assigned = set(self.assigned)
        return [v for v in self.variables if v not in assigned]


def _is_increment(expr: Expr, counter: str) -> bool:
    if not isinstance(expr, BinOp) or expr.op != "+":
        return False
    l, r = expr.left, expr.right
    one = Num(Fraction(1))
    return (l == Var(counter) and r == one) or (r == Var(counter) and l == one)


def _shift_counter(e: Expr, counter: str) -> Expr:
    if isinstance(e, Var) and e.name == counter:
        return BinOp("+", e, Num(Fraction(1)))
    if isinstance(e, BinOp):
        return BinOp(e.op, _shift_counter(e.left, counter), _shift_counter(e.right, counter))
    if isinstance(e, Neg):
        return Neg(_shift_counter(e.operand, counter))
    if isinstance(e, Pow):
        return Pow(_shift_counter(e.base, counter), e.exponent)
    return e


class _Parser:
    def __init__(self, src: str):
        self.ts = TokenStream(tokenize(src))

    def program(self, counter: str) -> LoopProgram:
        ts = self.ts
        tok = ts.peek
        if tok.text != "while":
            raise ParseError("a loop must start with 'while'", tok.line, tok.column)
        ts.next()
        guard = []
        while not (ts.peek.kind == "ident" and ts.peek.text == "do"):
            if ts.peek.kind == "eof":
                raise ts.error("expected 'do' after the loop guard")
            guard.append(ts.next().text)
        ts.next()
        body: list[Assignment] = []
        while True:
            tok = ts.peek
            if tok.kind == "eof":
                raise ParseError("expected 'end' to close the loop", tok.line, tok.column)
            if tok.kind == "ident" and tok.text == "end":
                ts.next()
                ts.accept("while")
                ts.accept(";")
                break
            if tok.kind == "ident" and tok.text in _OUT_OF_MODEL:
                raise OutOfModelError(
                    f"'{tok.text}' is out of model: only single-path loop bodies of assignments are supported",
                    tok.line,
                    tok.column,
                )
            body.append(self.assignment())
            if not ts.accept(";"):
                if not (ts.peek.kind == "ident" and ts.peek.text == "end"):
                    raise ts.error(f"expected ';' after assignment, found {ts.peek.text or 'end of input'!r}")
        if ts.peek.kind != "eof":
            tok = ts.peek
            if tok.text in _OUT_OF_MODEL:
                raise OutOfModelError("only a single loop is supported", tok.line, tok.column)
            raise ParseError(f"unexpected {tok.text!r} after the loop", tok.line, tok.column)
        return _normalize(body, counter, " ".join(guard) or "true")

    def assignment(self) -> Assignment:
        ts = self.ts
        tok = ts.next()
        if tok.kind != "ident":
            raise ParseError(f"expected a variable, found {tok.text or 'end of input'!r}", tok.line, tok.column)
        ts.expect(":=")
        return Assignment(tok.text, self.expr(), tok.line)

    def expr(self) -> Expr:
        ts = self.ts
        left = self.term()
        while ts.peek.text in ("+", "-") and ts.peek.kind == "op":
            op = ts.next().text
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        ts = self.ts
        left = self.unary()
        while ts.peek.text in ("*", "/") and ts.peek.kind == "op":
            op = ts.next().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.ts.accept("-"):
            return Neg(self.unary())
        if self.ts.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        ts = self.ts
        if ts.accept("^") or ts.accept("**"):
            tok = ts.next()
            if tok.kind != "num":
                raise ParseError("exponent must be a nonnegative integer", tok.line, tok.column)
            return Pow(base, int(tok.text))
        return base

    def atom(self) -> Expr:
        ts = self.ts
        tok: Token = ts.next()
        if tok.kind == "num":
            return Num(Fraction(int(tok.text)))
        if tok.kind == "ident":
            if tok.text in _OUT_OF_MODEL:
                raise OutOfModelError(f"'{tok.text}' is out of model", tok.line, tok.column)
            return Var(tok.text)
        if tok.text == "(":
            e = self.expr()
            ts.expect(")")
            return e
        raise ParseError(f"unexpected {tok.text or 'end of input'!r} in expression", tok.line, tok.column)


def _normalize(body: list[Assignment], counter: str, guard: str) -> LoopProgram:
    out: list[Assignment] = []
    incremented = False
    for a in body:
        if a.target == counter:
            if incremented or not _is_increment(a.expr, counter):
                raise OutOfModelError(
                    f"the counter {counter!r} may only be updated once, as {counter} := {counter} + 1", a.line
                )
            incremented = True
            continue
        out.append(Assignment(a.target, _shift_counter(a.expr, counter), a.line) if incremented else a)
    return LoopProgram(tuple(out), counter, guard)


def parse_loop(src: str, counter: str = "n") -> LoopProgram:
    """Parse loop source into a :class:`LoopProgram`."""
    return _Parser(src).program(counter)
