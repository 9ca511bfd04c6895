"""Named pass/fail checks and the JSON report wrapper used by the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .serialize import jsonable

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self):
        out = {"name": self.name, "passed": bool(self.passed)}
        if self.witness:
            out["witness"] = jsonable(self.witness)
        return out


@dataclass
class VerificationReport:
    command: str
    parameters: dict
    checks: list = field(default_factory=list)
    elapsed_ms: int = 0
    error: str | None = None
    result: dict | None = None

    @property
    def passed(self):
        return self.error is None and all(c.passed for c in self.checks)

    def extend(self, checks):
        self.checks.extend(checks)

    def to_json(self):
        out = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "parameters": jsonable(self.parameters),
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "elapsed_ms": self.elapsed_ms,
        }
        if self.result is not None:
            out["result"] = jsonable(self.result)
        if self.error is not None:
            out["error"] = self.error
        return out

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def text(self):
        lines = [f"{self.command}: {'PASS' if self.passed else 'FAIL'} ({self.elapsed_ms} ms)"]
        if self.error:
            lines.append(f"  error: {self.error}")
        for c in self.checks:
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}{_summary(c.witness)}")
        return "\n".join(lines)


def _summary(witness):
    # short values only; matrices and long expansions are left to the JSON report
    shown = {k: v for k, v in jsonable(witness).items() if not isinstance(v, dict) and len(str(v)) <= 40}
    if not shown:
        return ""
    return "  " + ", ".join(f"{k}={v}" for k, v in shown.items())
