"""Walk models - Amplitude field of the walker and its position distribution."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.models.numeric import ComplexValue


class Spinor(BaseModel):
    """Two-component complex amplitude attached to a lattice site."""

    model_config = ConfigDict(frozen=True)

    up: ComplexValue = Field(..., description="Amplitude routed left by the top coin row")
    down: ComplexValue = Field(..., description="Amplitude routed right by the bottom coin row")

    @property
    def norm_squared(self) -> float:
        return abs(self.up) ** 2 + abs(self.down) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=np.complex128)


class WalkState(BaseModel):
    """Full amplitude field at time t over positions -t..t.

    Row ``i`` of ``amplitudes`` holds the spinor at position ``i - time``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    time: int = Field(..., ge=0, description="Number of steps taken")
    amplitudes: np.ndarray = Field(..., description="Complex array of shape (2*time + 1, 2)")

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _own_copy(cls, value) -> np.ndarray:
        # Stored arrays are frozen; the caller's array stays writable.
        return np.array(value, copy=True)

    @model_validator(mode="after")
    def _check_field(self) -> "WalkState":
        amps = self.amplitudes
        if amps.dtype != np.complex128 or amps.shape != (2 * self.time + 1, 2):
            raise ValueError(
                f"amplitudes must be complex128 of shape {(2 * self.time + 1, 2)}, "
                f"got {amps.dtype} {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        # Odd rows are the sites with x != t (mod 2).
        if np.any(amps[1::2]):
            raise ValueError("amplitudes on wrong-parity sites must be exactly zero")
        amps.setflags(write=False)
        return self

    @property
    def offset(self) -> int:
        """Leftmost represented position."""
        return -self.time

    @property
    def total_probability(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def spinor_at(self, x: int) -> Spinor:
        if abs(x) > self.time:
            return Spinor(up=0j, down=0j)
        up, down = self.amplitudes[x - self.offset]
        return Spinor(up=complex(up), down=complex(down))


class Distribution(BaseModel):
    """Position distribution P(X_t = x) over the parity-consistent sites."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    time: int = Field(..., ge=0)
    positions: np.ndarray = Field(..., description="Ascending integer positions")
    probabilities: np.ndarray = Field(..., description="Probability of each position")

    @field_validator("positions", "probabilities", mode="before")
    @classmethod
    def _own_copy(cls, value) -> np.ndarray:
        return np.array(value, copy=True)

    @model_validator(mode="after")
    def _check_entries(self) -> "Distribution":
        if self.positions.shape != self.probabilities.shape or self.positions.ndim != 1:
            raise ValueError("positions and probabilities must be 1-D arrays of equal length")
        if self.positions.size == 0:
            raise ValueError("distribution must have at least one entry")
        if np.any(np.diff(self.positions) <= 0):
            raise ValueError("positions must be strictly ascending")
        if np.any(self.probabilities < 0) or not np.all(np.isfinite(self.probabilities)):
            raise ValueError("probabilities must be finite and non-negative")
        self.positions.setflags(write=False)
        self.probabilities.setflags(write=False)
        return self

    @property
    def entries(self) -> list[tuple[int, float]]:
        return [(int(x), float(p)) for x, p in zip(self.positions, self.probabilities)]

    @property
    def total(self) -> float:
        return float(np.sum(self.probabilities))

    def probability_at(self, x: int) -> float:
        index = np.searchsorted(self.positions, x)
        if index < self.positions.size and self.positions[index] == x:
            return float(self.probabilities[index])
        return 0.0
