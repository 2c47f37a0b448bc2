"""Verdicts returned by the verification harnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE-TRUNCATED"


@dataclass
class CheckReport:
    name: str
    verdict: str
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    entries: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "counts": dict(sorted(self.counts.items())),
            "violations": self.violations,
            "notes": self.notes,
            **({"entries": self.entries} if self.entries else {}),
        }


def verdict_for(violations: list, truncated: bool) -> str:
    if violations:
        return FAIL
    return INCONCLUSIVE if truncated else PASS
