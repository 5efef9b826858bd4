"""Exception hierarchy shared by all pipeline stages.

Every error carries a ``stage`` tag so the command-line driver can map it to
an exit code without inspecting messages.
"""

from __future__ import annotations


class LoopInvError(Exception):
    stage = "internal"


class ParseError(LoopInvError):
    stage = "parse"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")


class OutOfModelError(ParseError):
    """Raised for branches, nested loops and other constructs outside single-path loops."""


class ExtractionError(LoopInvError):
    stage = "extract"

    def __init__(self, message: str, variable: str | None = None):
        self.variable = variable
        super().__init__(message)


class NotSelfContained(ExtractionError):
    """A variable's update still references another evolving variable."""


class NonRationalCoefficient(ExtractionError):
    """An update is not of the shape ``v := r(n)*v + (history terms) + p(n)``."""


class Unsolvable(LoopInvError):
    stage = "solve"

    NON_RATIONAL_EIGENVALUE = "NonRationalEigenvalue"
    NO_HYPERGEOMETRIC_BASIS = "NoHypergeometricBasis"
    INCONSISTENT_INITIAL_VALUES = "InconsistentInitialValues"

    def __init__(self, reason: str, detail: str = "", variable: str | None = None):
        self.reason = reason
        self.detail = detail
        self.variable = variable
        msg = reason if not detail else f"{reason}: {detail}"
        if variable:
            msg = f"{variable}: {msg}"
        super().__init__(msg)


class InconsistentSystem(LoopInvError):
    """Linear system without solution."""

    stage = "solve"


class ResourceLimitExceeded(LoopInvError):
    stage = "resource"


class InterpretationError(LoopInvError):
    stage = "interpret"

    def __init__(self, message: str, iteration: int | None = None):
        self.iteration = iteration
        if iteration is not None:
            message = f"iteration {iteration}: {message}"
        super().__init__(message)
