"""Pass/fail reports returned by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List


class GuardError(ValueError):
    """Raised when a request would exceed an enumeration size guard."""


@dataclass
class CheckReport:
    name: str
    passed: bool = True
    failures: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.passed = False
        self.failures.append(message)

    def require(self, condition: bool, message: str) -> None:
        if not condition:
            self.fail(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.name}"
        if self.failures:
            line += f": {self.failures[0]}"
            if len(self.failures) > 1:
                line += f" (+{len(self.failures) - 1} more)"
        return line

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "failures": list(self.failures),
            "details": self.details,
        }
