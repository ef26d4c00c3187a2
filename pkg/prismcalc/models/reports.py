"""
Report records shared by the checking operations.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class IsoReport:
    """Named boolean checks plus free-form details."""

    name: str
    checks: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)
    counterexamples: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, check: str, ok: bool, witness: Any = None) -> bool:
        self.checks[check] = self.checks.get(check, True) and bool(ok)
        if not ok and witness is not None:
            self.counterexamples.append(f"{check}: {witness}")
        return ok

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": dict(sorted(self.checks.items())),
            "details": self.details,
            "counterexamples": self.counterexamples,
        }


@dataclass
class RankComparison:
    """Per-piece lengths from two independent computations."""

    name: str
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row["left"] == row["right"] for row in self.rows)

    def add(self, key: Any, left: int, right: int, **extra) -> None:
        self.rows.append({"piece": key, "left": left, "right": right, **extra})

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "rows": self.rows}
