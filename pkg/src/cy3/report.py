"""Structured reports shared by the CLI: parameters, results and named checks."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any


def _plain(obj: Any) -> Any:
    """Round-trip through JSON so reports compare equal after parsing."""
    return json.loads(json.dumps(obj, default=_default))


def _default(obj):
    import numpy as np

    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "pass": self.passed}


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def __post_init__(self):
        self.params = _plain(self.params)
        self.results = _plain(self.results)

    def check(self, name: str, expected, actual, passed: bool | None = None) -> bool:
        expected, actual = _plain(expected), _plain(actual)
        ok = bool(expected == actual) if passed is None else bool(passed)
        self.checks.append(Check(name, expected, actual, ok))
        return ok

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "checks": [c.as_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        d = json.loads(text)
        checks = [Check(c["name"], c["expected"], c["actual"], c["pass"]) for c in d["checks"]]
        return cls(d["command"], d["params"], d["results"], checks)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["command", "name", "expected", "actual", "pass"])
        for c in self.checks:
            w.writerow([self.command, c.name, json.dumps(c.expected), json.dumps(c.actual), c.passed])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.command}  {json.dumps(self.params, sort_keys=True)}"]
        for k in sorted(self.results):
            v = self.results[k]
            s = json.dumps(v, sort_keys=True)
            if len(s) > 200:
                s = s[:197] + "..."
            lines.append(f"  {k}: {s}")
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}: expected {json.dumps(c.expected)}, got {json.dumps(c.actual)}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.as_dict() == other.as_dict()
