"""Verdict records returned by the bounded checks; text and JSON mirror each other."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


def _plain(value):
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


@dataclass
class NormalityReport:
    check: str
    max_leaves: int
    max_depth: int | None = None
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.witness is None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return _plain(
            {
                "check": self.check,
                "max_leaves": self.max_leaves,
                "max_depth": self.max_depth,
                "verdict": self.verdict,
                "witness": self.witness,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    def format_text(self) -> str:
        bounds = f"max_leaves={self.max_leaves}"
        if self.max_depth is not None:
            bounds += f" max_depth={self.max_depth}"
        lines = [f"{self.check}: {self.verdict} ({bounds})"]
        if self.witness:
            for k, v in self.to_dict()["witness"].items():
                lines.append(f"  {k}: {v}")
        return "\n".join(lines)


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        return _plain(
            {
                "name": self.name,
                "verdict": "pass" if self.passed else "fail",
                "witness": self.witness,
                "note": self.note,
            }
        )


@dataclass
class VerificationReport:
    bound: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def extend(self, other: VerificationReport) -> VerificationReport:
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> dict:
        return {"bound": self.bound, "checks": [c.to_dict() for c in self.checks]}

    def format_text(self) -> str:
        lines = [f"bound: {self.bound}"]
        for c in self.checks:
            d = c.to_dict()
            line = f"{c.name}: {d['verdict']}"
            if c.note:
                line += f" ({c.note})"
            lines.append(line)
            for k, v in (d["witness"] or {}).items():
                lines.append(f"  {k}: {v}")
        return "\n".join(lines)
