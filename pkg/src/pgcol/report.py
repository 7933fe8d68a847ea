"""Verification reports shared by every sweep."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    tag: str
    family: str
    instances_total: int = 0  # colourings / subsets enumerated
    instances_checked: int = 0  # those satisfying the statement's hypotheses
    violations: int = 0
    first_counterexample: dict[str, Any] | None = None
    extra: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def add_violation(self, witness: dict[str, Any]) -> None:
        # sweeps run in canonical order, so the first one recorded is the lex-min
        self.violations += 1
        if self.first_counterexample is None:
            self.first_counterexample = witness

    def content(self) -> dict[str, Any]:
        """Everything except timing; deterministic for fixed inputs."""
        return {
            "tag": self.tag,
            "family": self.family,
            "instances_total": self.instances_total,
            "instances_checked": self.instances_checked,
            "violations": self.violations,
            "first_counterexample": self.first_counterexample,
            "extra": self.extra,
        }

    def to_json(self) -> str:
        doc = self.content()
        doc["footer"] = {"wall_time": round(self.wall_time, 6)}
        return json.dumps(doc, sort_keys=True, indent=2)

    def summary(self) -> str:
        status = "OK" if self.ok else "VIOLATION"
        return (
            f"{self.tag}: {status} ({self.family}; total={self.instances_total}, "
            f"checked={self.instances_checked}, violations={self.violations}, "
            f"{self.wall_time:.2f}s)"
        )
