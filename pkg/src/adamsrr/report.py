"""Structured pass/fail records produced by every verifier."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


def _render(value: Any) -> str:
    return value if isinstance(value, str) else str(value)


def _is_zero(value: Any) -> bool:
    if hasattr(value, "is_zero"):
        return value.is_zero()
    return value == 0


@dataclass
class Case:
    """One checked equation ``lhs == rhs``; ``residual`` is ``lhs - rhs``."""

    input: Any
    lhs: Any
    rhs: Any
    residual: Any
    group: str = ""

    @property
    def passed(self) -> bool:
        return _is_zero(self.residual)

    def to_dict(self) -> dict:
        out = {
            "input": _render(self.input),
            "lhs": _render(self.lhs),
            "rhs": _render(self.rhs),
            "residual": _render(self.residual),
            "pass": self.passed,
        }
        if self.group:
            out["group"] = self.group
        return out


@dataclass
class IntegralityEntry:
    where: str
    coeff: str
    verdict: str
    denominator: int

    @property
    def acceptable(self) -> bool:
        return self.verdict in ("INTEGER", "J_LOCAL")

    def to_dict(self) -> dict:
        return {
            "where": self.where,
            "coeff": self.coeff,
            "verdict": self.verdict,
            "denominator": self.denominator,
        }


@dataclass
class VerificationReport:
    name: str
    params: dict = field(default_factory=dict)
    cases: list = field(default_factory=list)
    integrality: list = field(default_factory=list)

    def add(self, input, lhs, rhs, group: str = "") -> Case:
        case = Case(input, lhs, rhs, lhs - rhs, group)
        self.cases.append(case)
        return case

    def add_residual(self, input, lhs, rhs, residual, group: str = "") -> Case:
        case = Case(input, lhs, rhs, residual, group)
        self.cases.append(case)
        return case

    def extend(self, other: "VerificationReport", group: str | None = None) -> None:
        for case in other.cases:
            if group is not None:
                case.group = group
            self.cases.append(case)
        self.integrality.extend(other.integrality)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases) and all(
            e.acceptable for e in self.integrality
        )

    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def groups(self) -> dict:
        """Pass flag per case group, in first-seen order."""
        out: dict = {}
        for case in self.cases:
            out[case.group] = out.get(case.group, True) and case.passed
        return out

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "cases": [c.to_dict() for c in self.cases],
            "integrality": [e.to_dict() for e in self.integrality],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.name}: {status} ({len(self.cases)} cases)"]
        groups = self.groups()
        if len(groups) > 1:
            for g, ok in groups.items():
                lines.append(f"  {g}: {'PASS' if ok else 'FAIL'}")
        for case in self.failures():
            tag = f"[{case.group}] " if case.group else ""
            lines.append(f"  {tag}{_render(case.input)}: residual {_render(case.residual)}")
        bad = [e for e in self.integrality if not e.acceptable]
        for e in bad:
            lines.append(f"  non-local coefficient {e.coeff} at {e.where}")
        return "\n".join(lines)


def _jsonable(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)
