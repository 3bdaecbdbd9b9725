"""Pydantic models for the time-dependent quantum walk simulator."""

from app.models.walk import Spinor, WalkState, Distribution
from app.models.coin import CoinMatrix, CoinSchedule, ScheduleKind
from app.models.density import LimitDensity, DensityProvenance
from app.models.spectral import SymbolMatrix, EigenSystem
from app.models.report import ConvergenceRecord, ConvergenceReport, CheckResult
from app.models.run import (
    RunConfig,
    ScheduleSpec,
    OnePeriodSpec,
    NPeriodSpec,
    TwoPeriodSpec,
    Case1Spec,
    Case2Spec,
)

__all__ = [
    # Walk
    "Spinor",
    "WalkState",
    "Distribution",
    # Coins
    "CoinMatrix",
    "CoinSchedule",
    "ScheduleKind",
    # Densities
    "LimitDensity",
    "DensityProvenance",
    # Spectral
    "SymbolMatrix",
    "EigenSystem",
    # Reports
    "ConvergenceRecord",
    "ConvergenceReport",
    "CheckResult",
    # Run configuration
    "RunConfig",
    "ScheduleSpec",
    "OnePeriodSpec",
    "NPeriodSpec",
    "TwoPeriodSpec",
    "Case1Spec",
    "Case2Spec",
]
