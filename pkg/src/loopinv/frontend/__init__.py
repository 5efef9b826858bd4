"""Loop language: parsing, interpretation and recurrence extraction."""

from .extract import Classification, RecurrenceSystem, Register, classify, extract_recurrences, initial_bindings
from .interpret import eval_expr, iterate, run, run_exact, run_symbolic
from .parser import Assignment, BinOp, LoopProgram, Neg, Num, Pow, Var, expr_variables, format_expr, parse_loop

__all__ = [
    "Classification",
    "RecurrenceSystem",
    "Register",
    "classify",
    "extract_recurrences",
    "initial_bindings",
    "eval_expr",
    "iterate",
    "run",
    "run_exact",
    "run_symbolic",
    "Assignment",
    "BinOp",
    "LoopProgram",
    "Neg",
    "Num",
    "Pow",
    "Var",
    "expr_variables",
    "format_expr",
    "parse_loop",
]
