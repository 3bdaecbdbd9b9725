"""Limit density models - Closed-form weak-limit densities."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class DensityProvenance(str, Enum):
    """Which limit theorem (and branch) produced a density."""

    KONNO = "konno"
    THEOREM1_POSITIVE_DET = "theorem1-i"
    THEOREM1_NEGATIVE_DET = "theorem1-ii"
    THEOREM2 = "theorem2"
    THEOREM3 = "theorem3"


class LimitDensity(BaseModel):
    """Density f(x) = f_K(x; scale) * (1 - weight_constant * x) on (-scale, scale)."""

    model_config = ConfigDict(frozen=True)

    scale: float = Field(..., gt=0.0, lt=1.0, description="Support half-width |a|")
    weight_constant: float = Field(0.0, description="Skew coefficient of the (1 - w x) factor")
    provenance: DensityProvenance = DensityProvenance.KONNO
