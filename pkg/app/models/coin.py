"""Coin models - 2x2 coin matrices and time-dependent coin schedules."""

import math
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.numeric import ComplexValue

TWO_PI = 2.0 * math.pi


class CoinMatrix(BaseModel):
    """Row-major 2x2 complex coin [[a, b], [c, d]]."""

    model_config = ConfigDict(frozen=True)

    a: ComplexValue
    b: ComplexValue
    c: ComplexValue
    d: ComplexValue

    @classmethod
    def from_array(cls, matrix: np.ndarray) -> "CoinMatrix":
        return cls(
            a=complex(matrix[0, 0]),
            b=complex(matrix[0, 1]),
            c=complex(matrix[1, 0]),
            d=complex(matrix[1, 1]),
        )

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    def unitarity_defect(self) -> float:
        """Max absolute deviation of U U* from the identity."""
        m = self.matrix
        return float(np.max(np.abs(m @ m.conj().T - np.eye(2))))


class ScheduleKind(str, Enum):
    """Families of coin sequences {U_t}."""

    ONE_PERIOD = "one-period"
    N_PERIOD = "n-period"
    TWO_PERIOD = "two-period"
    CASE1 = "case1"    # w_{t+1} + w_t = kappa
    CASE2 = "case2"    # w_{t+1} = w_t + kappa


def unit_phase(w: float) -> complex:
    """e^{i w}, reducing the argument modulo 2 pi first."""
    return complex(np.exp(1j * math.fmod(w, TWO_PI)))


class CoinSchedule(BaseModel):
    """Rule mapping a time index t to the coin U_t."""

    model_config = ConfigDict(frozen=True)

    kind: ScheduleKind
    coins: tuple[CoinMatrix, ...] = Field(default=(), description="Periodic coin list")
    base: Optional[CoinMatrix] = Field(None, description="Base coin U of the phase families")
    w0: float = Field(0.0, description="Initial phase w_0 (radians)")
    kappa: float = Field(0.0, description="kappa_1 for case1, kappa_2 for case2")
    thetas: tuple[float, ...] = Field(default=(), description="Reflection angles, when known")

    @model_validator(mode="after")
    def _check_kind_fields(self) -> "CoinSchedule":
        periodic = (ScheduleKind.ONE_PERIOD, ScheduleKind.N_PERIOD, ScheduleKind.TWO_PERIOD)
        if self.kind in periodic:
            if not self.coins:
                raise ValueError(f"{self.kind.value} schedule needs at least one coin")
            if self.kind == ScheduleKind.ONE_PERIOD and len(self.coins) != 1:
                raise ValueError("one-period schedule takes exactly one coin")
            if self.kind == ScheduleKind.TWO_PERIOD and len(self.coins) != 2:
                raise ValueError("two-period schedule takes exactly two coins")
        elif self.base is None:
            raise ValueError(f"{self.kind.value} schedule needs a base coin")
        if not (math.isfinite(self.w0) and math.isfinite(self.kappa)):
            raise ValueError("w0 and kappa must be finite")
        return self

    @property
    def period(self) -> Optional[int]:
        if self.coins:
            return len(self.coins)
        if self.kind == ScheduleKind.CASE1:
            return 2
        return None

    def phase_at(self, t: int) -> float:
        """w_t from the closed forms of the phase recurrences."""
        if self.kind == ScheduleKind.CASE1:
            half = self.kappa / 2.0
            return (self.w0 - half) * (-1 if t % 2 else 1) + half
        if self.kind == ScheduleKind.CASE2:
            return self.kappa * t + self.w0
        return 0.0

    def coin_at(self, t: int) -> CoinMatrix:
        if t < 0:
            raise ValueError(f"time index must be non-negative, got {t}")
        if self.coins:
            return self.coins[t % len(self.coins)]
        u = self.base
        phase = unit_phase(self.phase_at(t))
        if self.kind == ScheduleKind.CASE1:
            return CoinMatrix(a=u.a * phase, b=u.b, c=u.c, d=u.d * phase.conjugate())
        return CoinMatrix(a=u.a, b=u.b * phase, c=u.c * phase.conjugate(), d=u.d)
