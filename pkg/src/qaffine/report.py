"""Pass/fail bookkeeping shared by all property checks."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, case: str, lhs: object, rhs: object) -> None:
        self.failures.append({"case": case, "lhs": str(lhs), "rhs": str(rhs)})

    def to_json(self) -> dict:
        return {"name": self.name, "cases": self.cases, "passed": self.passed, "failures": self.failures[:5]}
