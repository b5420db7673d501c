from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List


@dataclass
class Condition:
    name: str
    passed: bool
    residual: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed),
                "residual": float(self.residual), "detail": self.detail}


@dataclass
class Report:
    """Outcome of a certificate check: one entry per optimality condition."""

    problem: str
    conditions: List[Condition] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, residual: float, detail: str = "") -> Condition:
        c = Condition(name, bool(passed), float(residual), detail)
        self.conditions.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def __getitem__(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        out = {"problem": self.problem, "passed": self.passed,
               "conditions": [c.to_dict() for c in self.conditions]}
        out.update(self.extra)
        return out

    def __str__(self) -> str:
        lines = [f"{self.problem}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.conditions:
            lines.append(f"  [{'ok' if c.passed else '!!'}] {c.name}: residual={c.residual:.3e} {c.detail}".rstrip())
        return "\n".join(lines)
