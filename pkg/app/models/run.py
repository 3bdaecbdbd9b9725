"""Run configuration models - Schedule descriptors and command-line configuration."""

import math
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config import settings
from app.models.coin import CoinMatrix
from app.models.numeric import ComplexValue

SQRT_HALF = math.sqrt(0.5)


class _Descriptor(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class OnePeriodSpec(_Descriptor):
    """Constant coin, given as a reflection angle or explicit entries."""

    kind: Literal["one-period"] = "one-period"
    theta: Optional[float] = None
    coin: Optional[CoinMatrix] = None

    @model_validator(mode="after")
    def _one_source(self) -> "OnePeriodSpec":
        if (self.theta is None) == (self.coin is None):
            raise ValueError("give exactly one of theta or coin")
        return self


class NPeriodSpec(_Descriptor):
    """Periodic coin list, given as reflection angles or explicit entries."""

    kind: Literal["n-period"] = "n-period"
    thetas: Optional[list[float]] = None
    coins: Optional[list[CoinMatrix]] = None

    @model_validator(mode="after")
    def _one_source(self) -> "NPeriodSpec":
        if (self.thetas is None) == (self.coins is None):
            raise ValueError("give exactly one of thetas or coins")
        if not (self.thetas or self.coins):
            raise ValueError("an n-period schedule needs at least one coin")
        return self


class TwoPeriodSpec(_Descriptor):
    """Alternating reflection coins H_0, H_1 (defaults pi/4, pi/6)."""

    kind: Literal["two-period"] = "two-period"
    theta0: float = math.pi / 4
    theta1: float = math.pi / 6


class _PhaseFamilySpec(_Descriptor):
    coin: Optional[CoinMatrix] = None
    coin_theta: Optional[float] = Field(None, description="Reflection angle of the base coin")
    w0: float = 0.0
    kappa: float = 0.0

    @model_validator(mode="after")
    def _one_source(self):
        if self.coin is not None and self.coin_theta is not None:
            raise ValueError("give at most one of coin or coin_theta")
        return self


class Case1Spec(_PhaseFamilySpec):
    kind: Literal["case1"] = "case1"


class Case2Spec(_PhaseFamilySpec):
    kind: Literal["case2"] = "case2"


ScheduleSpec = Annotated[
    Union[OnePeriodSpec, NPeriodSpec, TwoPeriodSpec, Case1Spec, Case2Spec],
    Field(discriminator="kind"),
]

Command = Literal["simulate", "density", "spectrum", "moments", "verify"]
Check = Literal["case1-reduction", "theorem3-equiv", "spectral", "convergence"]


class RunConfig(BaseModel):
    """Everything one CLI invocation needs; the JSON form of the flags."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    schedule: ScheduleSpec = Field(default_factory=TwoPeriodSpec)
    alpha: ComplexValue = complex(SQRT_HALF, 0.0)
    beta: ComplexValue = complex(0.0, SQRT_HALF)
    t: int = Field(default_factory=lambda: settings.default_time, ge=0)
    t_list: list[int] = Field(default_factory=lambda: [100, 200, 500])
    format: Literal["csv", "json"] = "csv"
    out: Optional[str] = None
    theorem: Optional[Literal[1, 2, 3]] = None
    check: Optional[Check] = None
    ks_threshold: float = Field(default_factory=lambda: settings.ks_threshold, gt=0.0, le=1.0)
    ks_slack: float = Field(default_factory=lambda: settings.ks_slack, ge=0.0)
    grid_points: int = Field(default_factory=lambda: settings.density_grid_points, ge=2)
    k_points: int = Field(1024, ge=2)
    r_max: int = Field(4, ge=1, le=16)

    @model_validator(mode="after")
    def _check_times(self) -> "RunConfig":
        if not self.t_list or any(t < 1 for t in self.t_list):
            raise ValueError("t_list must hold positive times")
        if self.t_list != sorted(set(self.t_list)):
            raise ValueError("t_list must be strictly ascending")
        if self.command == "verify" and self.check is None:
            raise ValueError("verify needs a check name")
        return self
