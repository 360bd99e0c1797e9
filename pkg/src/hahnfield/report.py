"""Check results and reports shared by the validators and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "inconclusive", "skipped")


@dataclass
class CheckResult:
    name: str
    status: str
    witness: dict[str, Any] | None = None
    detail: str | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class CoupleReport:
    checks: list[CheckResult] = field(default_factory=list)
    flags: dict[str, Any] = field(default_factory=dict)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, other: CoupleReport) -> None:
        self.checks.extend(other.checks)
        self.flags.update(other.flags)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        return all(c.status in ("pass", "skipped") for c in self.checks)

    def statuses(self) -> dict[str, str]:
        return {c.name: c.status for c in self.checks}

    def to_json(self) -> dict[str, Any]:
        return {
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
            "flags": _jsonable(self.flags),
        }


def _jsonable(obj: Any) -> Any:
    from fractions import Fraction

    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return obj
