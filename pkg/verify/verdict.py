from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from spec_model.words import LassoWord

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    name: str
    status: str
    counterexample: Optional[object] = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def describe_counterexample(self) -> str:
        if self.counterexample is None:
            return ""
        if isinstance(self.counterexample, LassoWord):
            return str(self.counterexample)
        if isinstance(self.counterexample, tuple) and all(isinstance(w, LassoWord) for w in self.counterexample):
            return " / ".join(str(w) for w in self.counterexample)
        return "".join(f"({', '.join(sorted(letter)) or '∅'})" for letter in self.counterexample) or "ε"

    def to_row(self) -> dict:
        return {
            "check": self.name,
            "status": self.status,
            "counterexample": self.describe_counterexample(),
            "detail": self.detail,
        }


def holds(name, detail="") -> Verdict:
    return Verdict(name, HOLDS, detail=detail)


def fails(name, counterexample, detail="") -> Verdict:
    return Verdict(name, FAILS, counterexample, detail)


def inconclusive(name, detail) -> Verdict:
    return Verdict(name, INCONCLUSIVE, detail=detail)
