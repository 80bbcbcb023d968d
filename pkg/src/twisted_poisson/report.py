"""Uniform result records for exhaustive and sampled identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def plain(value: Any) -> Any:
    """JSON-ready form: Fractions become "p/q", tuples become lists, other objects their str."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((plain(v) for v in value), key=str)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    return str(value)


@dataclass
class CheckReport:
    check: str
    checked: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    max_violations: int = 20

    @property
    def passed(self) -> bool:
        return not self.violations and not self.details.get("errors")

    def record(self, ok: bool, **counterexample) -> bool:
        self.checked += 1
        if not ok and len(self.violations) < self.max_violations:
            self.violations.append({k: plain(v) for k, v in counterexample.items()})
        elif not ok:
            self.details["truncated_violations"] = self.details.get("truncated_violations", 0) + 1
        return ok

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.violations.extend(other.violations)
        return self

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "violations": self.violations,
            "details": plain(self.details),
        }
