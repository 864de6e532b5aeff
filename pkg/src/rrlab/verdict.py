"""Structured outcome of evaluating one inequality or identity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

VERIFIED, ASSUMED, FAILED, UNKNOWN = "verified", "assumed", "failed", "unknown"

_RELATIONS = {
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "=": lambda a, b: a == b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
}


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass
class Verdict:
    name: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    hypotheses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        self.lhs = _frac(self.lhs)
        self.rhs = _frac(self.rhs)

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    @property
    def equality_attained(self) -> bool:
        return self.lhs == self.rhs

    @property
    def applicable(self) -> bool:
        return not any(h["status"] == FAILED for h in self.hypotheses)

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not applicable - hypothesis failed"
        if self.holds:
            return "holds"
        if any(h["status"] in (ASSUMED, UNKNOWN) for h in self.hypotheses):
            return "violated under unverified hypotheses"
        return "violated"

    @property
    def is_finding(self) -> bool:
        """A violation with every hypothesis verified or asserted."""
        return self.status == "violated"

    @property
    def is_unverified_violation(self) -> bool:
        return self.status == "violated under unverified hypotheses"

    def hypothesis(self, name: str, status: str, detail: str = "") -> "Verdict":
        self.hypotheses.append({"name": name, "status": status, "detail": detail})
        return self

    def to_dict(self) -> dict:
        return {
            "name": self.name, "lhs": str(self.lhs), "relation": self.relation,
            "rhs": str(self.rhs), "holds": self.holds,
            "equality_attained": self.equality_attained, "status": self.status,
            "hypotheses": [dict(h) for h in self.hypotheses], "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(data["name"], Fraction(data["lhs"]), data["relation"], Fraction(data["rhs"]),
                   [dict(h) for h in data.get("hypotheses", [])], list(data.get("notes", [])))

    def line(self) -> str:
        return f"{self.name}: {self.lhs} {self.relation} {self.rhs} [{self.status}]"
