"""Command-line driver: ``loopinv FILE... [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import (
    ExtractionError,
    InterpretationError,
    LoopInvError,
    ParseError,
    ResourceLimitExceeded,
    Unsolvable,
)
from .pipeline import RunConfig, run, serialize

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_EXTRACT = 4
EXIT_SOLVE = 5
EXIT_RESOURCE = 6
EXIT_INTERPRET = 7

_EPILOG = """\
initial values:
  --init a=3 --init b=-1/2 --init rem=x --init quo=sym
  a value is a rational, 'sym' (the default: a symbolic parameter a_0), or a
  parameter name.  Loop constants without a value stay symbolic.

exit codes:
  0  invariants computed (and the check passed, if enabled)
  1  the independent check found a counterexample
  2  usage error
  3  parse error or construct outside the loop model
  4  recurrence extraction failed (NotSelfContained, NonRationalCoefficient)
  5  solver failure (NonRationalEigenvalue, NoHypergeometricBasis, ...)
  6  resource cap exceeded (--gb-step-cap)
  7  error while interpreting the loop (e.g. division by zero)
"""


def _parse_init(items: list[str]) -> dict[str, object]:
    out: dict[str, object] = {}
    for item in items:
        name, sep, value = item.partition("=")
        name, value = name.strip(), value.strip()
        if not sep or not name or not value:
            raise ValueError(f"--init expects NAME=VALUE, got {item!r}")
        if value == "sym" or value.isidentifier():
            out[name] = value
        else:
            try:
                out[name] = Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"--init {name}: {value!r} is neither a rational, 'sym' nor a name") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="loopinv",
        description="Generate all polynomial invariants of single-path loops whose variables "
        "follow C-finite or hypergeometric recurrences.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("files", nargs="+", metavar="FILE", help="loop source file(s)")
    p.add_argument("--counter", default="n", help="name of the loop counter (default: n)")
    p.add_argument("--init", action="append", default=[], metavar="NAME=VALUE", help="initial value (repeatable)")
    p.add_argument("--vars", default=None, help="comma-separated variables to keep (default: all non-temporaries)")
    p.add_argument("--include-temporaries", action="store_true", help="keep history registers as invariant variables")
    p.add_argument("--reduce", action="store_true", help="reduced basis without redundant generators")
    p.add_argument("--check", type=int, default=25, metavar="N",
                   help="verify invariants on exact runs for N iterations from the validity offset (0 disables)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--degree-cap", type=int, default=20, help="degree bound for polynomial solutions in the hypergeometric search")
    p.add_argument("--gb-step-cap", type=int, default=20000, help="maximum number of S-polynomial reductions")
    p.add_argument("--no-timings", action="store_true", help="omit timings (byte-identical output across runs)")
    return p


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, ExtractionError):
        return EXIT_EXTRACT
    if isinstance(exc, Unsolvable):
        return EXIT_SOLVE
    if isinstance(exc, ResourceLimitExceeded):
        return EXIT_RESOURCE
    if isinstance(exc, InterpretationError):
        return EXIT_INTERPRET
    if isinstance(exc, LoopInvError):
        return EXIT_SOLVE
    return EXIT_USAGE


def _error_payload(path: str, exc: BaseException) -> dict:
    stage = getattr(exc, "stage", "usage")
    out = {"file": path, "error": {"stage": stage, "kind": type(exc).__name__, "message": str(exc)}}
    reason = getattr(exc, "reason", None)
    if reason:
        out["error"]["reason"] = reason
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        init = _parse_init(args.init)
        relevant = [v.strip() for v in args.vars.split(",") if v.strip()] if args.vars else None
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"loopinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code = EXIT_OK
    outputs: list[str] = []
    json_items: list[dict] = []
    for path in args.files:
        try:
            config = RunConfig(
                input_path=path,
                counter=args.counter,
                initial_values=init,
                relevant_vars=relevant,
                include_temporaries=args.include_temporaries,
                reduce=args.reduce,
                check_iterations=args.check,
                format=args.format,
                degree_cap=args.degree_cap,
                gb_step_cap=args.gb_step_cap,
                timings=not args.no_timings,
            )
            report = run(config)
        except (LoopInvError, ValueError, OSError) as exc:
            this = _exit_code(exc)
            code = code or this
            print(f"{path}: error[{getattr(exc, 'stage', 'usage')}] {type(exc).__name__}: {exc}", file=sys.stderr)
            if args.format == "json":
                json_items.append(_error_payload(path, exc))
            continue
        if not report.ok:
            code = code or EXIT_CHECK_FAILED
        text = serialize(report, args.format, timings=not args.no_timings)
        if args.format == "json":
            item = json.loads(text)
            item = {"file": path, **item} if len(args.files) > 1 else item
            json_items.append(item)
        else:
            outputs.append(text if len(args.files) == 1 else f"## {path}\n{text}")
    if args.format == "json":
        payload = json_items[0] if len(args.files) == 1 else json_items
        print(json.dumps(payload, indent=2))
    else:
        if outputs:
            print("\n\n".join(outputs))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
