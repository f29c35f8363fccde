"""Structured outputs of the estimate verifiers."""

from typing import Any, Dict, List

from pydantic import BaseModel, Field


class EstimateReport(BaseModel):
    """Witness constants of a bound; passed ⇔ max_violation ≤ 0."""
    name: str
    witnesses: Dict[str, float] = Field(default_factory=dict)
    max_violation: float
    passed: bool
    details: List[Dict[str, Any]] = Field(default_factory=list)

    @classmethod
    def from_violations(
        cls,
        name: str,
        violations: List[float],
        witnesses: Dict[str, float],
        details: List[Dict[str, Any]]
    ) -> "EstimateReport":
        worst = max(violations) if violations else 0.0
        return cls(name=name, witnesses=witnesses, max_violation=worst, passed=worst <= 0.0, details=details)


class CoareaResult(BaseModel):
    """Both sides of the change of variables between graph and base."""
    graph_side: float
    base_side: float
    residual: float
