"""Polynomial invariant ideals of single-path loops.

Loop variables that follow C-finite or hypergeometric recurrences are solved
in closed form; the ideal of all polynomial invariants is obtained by
Groebner-basis elimination of the exponential and factorial sequences.

>>> from loopinv import RunConfig, run
>>> src = "while rem >= y do rem := rem - y; quo := quo + 1 end"
>>> rep = run(RunConfig(source=src, initial_values={"quo": 0, "rem": "x"}, reduce=True))
>>> [str(g) for g in rep.basis]
['quo*y + rem - x']
"""

from .errors import (
    ExtractionError,
    InconsistentSystem,
    InterpretationError,
    LoopInvError,
    NonRationalCoefficient,
    NotSelfContained,
    OutOfModelError,
    ParseError,
    ResourceLimitExceeded,
    Unsolvable,
)
from .algebra import MultiPoly, RatFunc, UniPoly, parse_poly
from .ore import OreOperator, gcrd, lclm, ore_mul, right_divmod, right_rem
from .recurrences import ClosedForm, Recurrence, SolverReport, assemble_closed_form, petkovsek_hyper_solutions
from .ideals import IdealBasis, MonomialOrder, buchberger, eliminate, exp_lattice, invariant_ideal, normal_form
from .frontend import classify, extract_recurrences, parse_loop
from .pipeline import CheckResult, InvariantReport, RunConfig, check_invariants, run, serialize

__version__ = "0.1.0"

__all__ = [
    "LoopInvError",
    "ParseError",
    "OutOfModelError",
    "ExtractionError",
    "NotSelfContained",
    "NonRationalCoefficient",
    "Unsolvable",
    "InconsistentSystem",
    "ResourceLimitExceeded",
    "InterpretationError",
    "MultiPoly",
    "UniPoly",
    "RatFunc",
    "parse_poly",
    "OreOperator",
    "ore_mul",
    "right_divmod",
    "right_rem",
    "gcrd",
    "lclm",
    "ClosedForm",
    "Recurrence",
    "SolverReport",
    "assemble_closed_form",
    "petkovsek_hyper_solutions",
    "IdealBasis",
    "MonomialOrder",
    "buchberger",
    "eliminate",
    "exp_lattice",
    "invariant_ideal",
    "normal_form",
    "classify",
    "extract_recurrences",
    "parse_loop",
    "RunConfig",
    "InvariantReport",
    "CheckResult",
    "run",
    "check_invariants",
    "serialize",
]
