import json
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from loopinv.algebra import MultiPoly

CORPUS = Path(__file__).resolve().parents[1] / "src" / "loopinv" / "corpus"


def to_sympy(p: MultiPoly) -> sympy.Expr:
    return sympy.sympify(str(p).replace("^", "**")) if p else sympy.Integer(0)


def from_sympy(e) -> MultiPoly:
    e = sympy.expand(e)
    return MultiPoly.parse(str(e).replace("**", "^")) if e != 0 else MultiPoly.zero()


def load_manifest() -> dict:
    return json.loads((CORPUS / "manifest.json").read_text())


def manifest_init(entry: dict) -> dict:
    out = {}
    for k, v in entry.get("init", {}).items():
        try:
            out[k] = Fraction(v)
        except ValueError:
            out[k] = v
    return out


@pytest.fixture(scope="session")
def manifest():
    return load_manifest()
