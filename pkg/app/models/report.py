"""Verification report models - Convergence records and check verdicts."""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.models.coin import CoinSchedule
from app.models.density import LimitDensity


class ConvergenceRecord(BaseModel):
    """Distance between the rescaled walk at time t and the limit density."""

    t: int = Field(..., ge=1)
    ks: float = Field(..., ge=0.0, le=1.0, description="Sup-norm CDF distance")
    moment_err: list[float] = Field(default_factory=list, description="Rescaled moment errors, r=1..4")


class ConvergenceReport(BaseModel):
    """Weak-convergence evidence for one schedule against one density."""

    model_config = ConfigDict(populate_by_name=True)

    schedule: CoinSchedule
    density: LimitDensity
    records: list[ConvergenceRecord]
    passed: bool = Field(..., alias="pass")

    @field_validator("records")
    @classmethod
    def _sorted_by_time(cls, records: list[ConvergenceRecord]) -> list[ConvergenceRecord]:
        times = [r.t for r in records]
        if not records or times != sorted(times):
            raise ValueError("records must be non-empty and sorted by t ascending")
        return records


class CheckResult(BaseModel):
    """Outcome of one verification suite."""

    model_config = ConfigDict(populate_by_name=True)

    check: str
    passed: bool = Field(..., alias="pass")
    max_error: float
    tolerance: float
    cases: int = Field(..., ge=0)
    details: dict[str, Any] = Field(default_factory=dict)
