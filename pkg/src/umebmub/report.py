"""Structured pass/fail results."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``passed`` holds exactly when ``max_abs_deviation <= tolerance``.
    ``worst_index`` names where the largest deviation occurred, in whatever
    indexing the criterion uses (label pairs, matrix positions, family ids).
    """

    passed: bool
    criterion: str
    target_value: float
    max_abs_deviation: float
    worst_index: Any
    tolerance: float
    sub_reports: list[VerificationReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @classmethod
    def from_deviation(cls, criterion, target_value, deviation, worst_index, tolerance, **kw):
        return cls(
            passed=bool(deviation <= tolerance),
            criterion=criterion,
            target_value=float(target_value),
            max_abs_deviation=float(deviation),
            worst_index=worst_index,
            tolerance=float(tolerance),
            **kw,
        )

    def to_json(self) -> dict:
        out = {
            "passed": self.passed,
            "criterion": self.criterion,
            "target_value": self.target_value,
            "max_abs_deviation": self.max_abs_deviation,
            "worst_index": _jsonable(self.worst_index),
            "tolerance": self.tolerance,
        }
        if self.sub_reports:
            out["sub_reports"] = [r.to_json() for r in self.sub_reports]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x
