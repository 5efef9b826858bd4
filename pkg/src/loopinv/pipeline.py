"""End-to-end invariant generation: parse, extract, solve, eliminate, check."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .errors import Unsolvable
from .frontend.extract import Classification, RecurrenceSystem, classify, extract_recurrences
from .frontend.interpret import iterate
from .frontend.parser import LoopProgram, parse_loop
from .ideals.groebner import DEFAULT_STEP_CAP, IdealBasis
from .ideals.relations import invariant_ideal
from .recurrences.closed_form import ClosedForm
from .recurrences.hyper import DEFAULT_DEGREE_CAP
from .recurrences.solve import SolverReport, assemble_closed_form

CHECK_TRIALS = 5
CHECK_SEED = 20240601
ZERO_IDEAL_TEXT = "true (zero ideal: no polynomial invariants)"


@dataclass
class RunConfig:
    input_path: str | None = None
    source: str | None = None
    counter: str = "n"
    initial_values: dict[str, object] = field(default_factory=dict)
    relevant_vars: list[str] | None = None
    include_temporaries: bool = False
    reduce: bool = False
    check_iterations: int = 25
    format: str = "text"
    degree_cap: int = DEFAULT_DEGREE_CAP
    gb_step_cap: int = DEFAULT_STEP_CAP
    timings: bool = True

    def __post_init__(self):
        if self.check_iterations < 0:
            raise ValueError("check iterations must be nonnegative")
        if self.degree_cap <= 0 or self.gb_step_cap <= 0:
            raise ValueError("caps must be positive")

    def read_source(self) -> str:
        if self.source is not None:
            return self.source
        if self.input_path is None:
            raise ValueError("no input given")
        return Path(self.input_path).read_text(encoding="utf-8")


@dataclass
class CheckResult:
    passed: bool
    trials: int = 0
    first_n: int = 0
    last_n: int = 0
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {"passed": self.passed, "trials": self.trials, "range": [self.first_n, self.last_n]}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class InvariantReport:
    basis: IdealBasis
    classification: Classification
    validity_offset: int
    variables: list[str]
    system: RecurrenceSystem
    reports: dict[str, SolverReport]
    closed_forms: dict[str, ClosedForm]
    check: CheckResult | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.check is None or self.check.passed


def _closed_forms(system: RecurrenceSystem, reports: Mapping[str, SolverReport], wanted: Sequence[str]) -> dict[str, ClosedForm]:
    out: dict[str, ClosedForm] = {}
    for v in wanted:
        root = system.registers[v].root if v in system.registers else v
        rep = reports[root]
        if not rep.ok:
            raise Unsolvable(rep.reason or "Unsolvable", rep.detail, root)
        cf = rep.closed_form
        if v in system.registers:
            reg = system.registers[v]
            cf = cf.shift(reg.delay).with_variable(v)
            if cf.offset < reg.valid_from:
                cf = ClosedForm(v, cf.counter, cf.summands, reg.valid_from, cf.solver_params)
        out[v] = cf
    return out


def _relevant(system: RecurrenceSystem, config: RunConfig) -> list[str]:
    assigned = system.program.assigned
    if config.relevant_vars is None:
        return list(assigned) if config.include_temporaries else system.tracked
    unknown = [v for v in config.relevant_vars if v not in system.program.variables]
    if unknown:
        raise ValueError(f"unknown variable(s) in --vars: {', '.join(unknown)}")
    return [v for v in config.relevant_vars if v in assigned]


def run(config: RunConfig) -> InvariantReport:
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    program = parse_loop(config.read_source(), config.counter)
    timings["parse"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    system = extract_recurrences(program, config.initial_values)
    timings["extract"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        reports = {v: assemble_closed_form(rec, config.degree_cap) for v, rec in system.recurrences.items()}
    except ZeroDivisionError as exc:
        _replay_division(program, system, config)
        raise Unsolvable("UndefinedSequence", str(exc)) from None
    classification = classify(system, reports)
    relevant = _relevant(system, config)
    cfs = _closed_forms(system, reports, relevant)
    timings["solve"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    basis = invariant_ideal(list(cfs.values()), relevant, reduce=config.reduce, step_cap=config.gb_step_cap)
    timings["ideal"] = time.perf_counter() - t0
    offset = max([cf.offset for cf in cfs.values()] + [0])

    report = InvariantReport(basis, classification, offset, relevant, system, reports, cfs, timings=timings)
    if config.check_iterations:
        t0 = time.perf_counter()
        report.check = check_invariants(program, basis, config, offset, system)
        timings["check"] = time.perf_counter() - t0
    return report


def _replay_division(program: LoopProgram, system: RecurrenceSystem, config: RunConfig, horizon: int = 200) -> None:
    """Re-raise a coefficient pole met while unrolling as the interpreter's division error."""
    rng = random.Random(CHECK_SEED)
    bindings = system.initial_bindings
    params = sorted({p for b in bindings.values() for p in b.used_variables()})
    values = {p: random_rational(rng) for p in params}
    init = {v: b.evaluate(values) for v, b in bindings.items()}
    for n, _ in enumerate(iterate(program, init)):
        if n > horizon:
            return


def random_rational(rng: random.Random, bound: int = 100) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def check_invariants(program: LoopProgram, basis: IdealBasis, config: RunConfig, offset: int = 0,
                     system: RecurrenceSystem | None = None, trials: int = CHECK_TRIALS,
                     seed: int = CHECK_SEED) -> CheckResult:
    """Evaluate every generator on exact interpreter runs for ``n = offset .. offset + N``."""
    if system is None:
        system = extract_recurrences(program, config.initial_values)
    bindings = system.initial_bindings
    params = sorted({p for b in bindings.values() for p in b.used_variables()})
    last = offset + config.check_iterations
    result = CheckResult(True, trials, offset, last)
    if basis.is_zero:
        return result
    rng = random.Random(seed)
    for _ in range(trials):
        values = {p: random_rational(rng) for p in params}
        init = {v: b.evaluate(values) for v, b in bindings.items()}
        for n, state in enumerate(iterate(program, init)):
            if n > last:
                break
            if n < offset:
                continue
            env = dict(values)
            env.update({k: v for k, v in state.items() if k != program.counter})
            for g in basis.generators:
                val = g.evaluate(env)
                if val:
                    return CheckResult(False, trials, offset, last, {
                        "generator": str(g),
                        "n": n,
                        "bindings": {k: str(v) for k, v in sorted(values.items())},
                        "value": str(val),
                    })
    return result


def display_generators(basis: IdealBasis) -> list[str]:
    return [str(g.content_normalized()) for g in basis.generators]


def serialize(report: InvariantReport, fmt: str = "text", timings: bool = True) -> str:
    gens = display_generators(report.basis)
    if fmt == "json":
        out = {
            "classification": str(report.classification),
            "offset": report.validity_offset,
            "variables": report.variables,
            "reduced": report.basis.reduced,
            "generators": gens,
            "closed_forms": {v: str(cf) for v, cf in report.closed_forms.items()},
        }
        if report.check is not None:
            out["check"] = report.check.to_json()
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in report.timings.items()}
        return json.dumps(out, indent=2, sort_keys=False)
    lines = [f"# classification: {report.classification}"]
    lines.append(f"# invariants hold for {report.system.counter} >= {report.validity_offset}")
    for v, cf in report.closed_forms.items():
        lines.append(f"# {v}({report.system.counter}) = {cf}")
    if gens:
        lines.append(" &&\n".join(f"{g} == 0" for g in gens))
    else:
        lines.append(ZERO_IDEAL_TEXT)
    if report.check is not None:
        c = report.check
        status = "passed" if c.passed else "FAILED"
        lines.append(f"# check {status}: {c.trials} trials, {report.system.counter} = {c.first_n}..{c.last_n}")
        if c.counterexample:
            ce = c.counterexample
            lines.append(f"# counterexample: {ce['generator']} = {ce['value']} at n = {ce['n']} with {ce['bindings']}")
    if timings:
        lines.append("# timings: " + ", ".join(f"{k} {v * 1000:.1f} ms" for k, v in report.timings.items()))
    return "\n".join(lines)


__all__ = [
    "RunConfig",
    "InvariantReport",
    "CheckResult",
    "run",
    "check_invariants",
    "serialize",
    "display_generators",
    "ZERO_IDEAL_TEXT",
]
