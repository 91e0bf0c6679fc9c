"""Structured reports shared by the CLI and the verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    claim: str
    anchor: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"claim": self.claim, "anchor": self.anchor, "passed": self.passed, "details": self.details}


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, claim: str, anchor: str, passed: bool, **details: Any) -> Check:
        check = Check(claim, anchor, bool(passed), details)
        self.checks.append(check)
        return check

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": [c.to_json() for c in self.checks],
            "passed": self.passed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, default=_fallback)

    def render_text(self) -> str:
        lines = [f"{self.command}"]
        for key in sorted(self.inputs):
            lines.append(f"  input {key}: {_short(self.inputs[key])}")
        blocks = []
        for key in sorted(self.results):
            value = self.results[key]
            if isinstance(value, str) and "\n" in value:
                blocks.append(value)
            else:
                lines.append(f"  {key}: {_short(value)}")
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.claim} ({c.anchor})")
        lines.append("all checks passed" if self.passed else "some checks FAILED")
        return "\n".join(lines + blocks)


def _fallback(obj: Any) -> Any:
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _short(value: Any, limit: int = 200) -> str:
    text = json.dumps(value, sort_keys=True, default=_fallback) if not isinstance(value, str) else value
    return text if len(text) <= limit else text[: limit - 3] + "..."
