"""Verdict records shared by the statement checks and the suite runner."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
INFEASIBLE = "infeasible"

STATUSES = (PASS, FAIL, NOT_APPLICABLE, INFEASIBLE)


@dataclass
class SuiteVerdict:
    """Outcome of one checked instance of a catalogued statement.

    A ``fail`` verdict always carries a witness with enough data to replay
    the failure through the public operations. ``not-applicable`` marks a
    vacuous hypothesis and is never counted as a pass.
    """

    suite: str
    group: str
    params: dict[str, Any] = field(default_factory=dict)
    status: str = PASS
    witness: Optional[dict[str, Any]] = None
    ms: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "suite": self.suite,
            "group": self.group,
            "params": self.params,
            "status": self.status,
            "ms": round(self.ms, 3),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out
