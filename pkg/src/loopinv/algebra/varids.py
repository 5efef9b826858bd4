from __future__ import annotations

import enum
from dataclasses import dataclass


class VarKind(enum.Enum):
    LOOP_COUNTER = "loop-counter"
    PROGRAM = "program-var"
    INITIAL_VALUE = "initial-value-param"
    EXPONENTIAL = "exponential-var"
    FACTORIAL = "factorial-var"
    SOLVER = "solver-param"
    AUXILIARY = "auxiliary"


@dataclass(frozen=True)
class VarId:
    name: str
    kind: VarKind


class NameRegistry:
    """Hands out unique variable names and remembers their kind."""

    def __init__(self, reserved=()):
        self._kinds: dict[str, VarKind] = {}
        self._reserved = set(reserved)

    def register(self, name: str, kind: VarKind) -> VarId:
        known = self._kinds.get(name)
        if known is not None and known is not kind:
            raise ValueError(f"name {name!r} already used as {known.value}")
        self._kinds[name] = kind
        return VarId(name, kind)

    def fresh(self, base: str, kind: VarKind) -> VarId:
        name = base
        i = 0
        while name in self._kinds or name in self._reserved:
            i += 1
            name = f"{base}_{i}" if not base.endswith("_") else f"{base}{i}"
        return self.register(name, kind)

    def kind(self, name: str) -> VarKind | None:
        return self._kinds.get(name)

    def names(self, kind: VarKind | None = None) -> list[str]:
        return [n for n, k in self._kinds.items() if kind is None or k is kind]

    def __contains__(self, name: str) -> bool:
        return name in self._kinds or name in self._reserved
