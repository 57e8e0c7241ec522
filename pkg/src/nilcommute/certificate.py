from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .exactfield import FieldSpec

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class Certificate:
    """Structured verdict with exact evidence, reproducible from (name, field, seed, trials)."""

    name: str
    verdict: str
    field: FieldSpec
    seed: int | None = None
    trials: int | None = None
    evidence: list[tuple[str, Any]] = dc_field(default_factory=list)

    def add(self, label: str, value: Any) -> "Certificate":
        self.evidence.append((label, value))
        return self

    def get(self, label: str, default=None):
        for k, v in self.evidence:
            if k == label:
                return v
        return default

    @property
    def passed(self) -> bool:
        return self.verdict == PASS
