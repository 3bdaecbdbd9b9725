"""Core walk - Amplitude field evolution, distributions and moments."""

import math
import time

import numpy as np

from app.config import settings
from app.errors import DomainError, NormalizationError
from app.models import CoinMatrix, CoinSchedule, Distribution, WalkState
from app.observability import logger, record_timing
from app.walks.coins import require_unitary


def new_walk(alpha: complex, beta: complex) -> WalkState:
    """Walker localized at the origin with coin state (alpha, beta)."""
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if not abs(norm - 1.0) <= settings.normalization_tolerance:
        raise NormalizationError(
            f"initial spinor must satisfy |alpha|^2 + |beta|^2 = 1, got {norm:.12g}"
        )
    amplitudes = np.array([[alpha, beta]], dtype=np.complex128)
    return WalkState(time=0, amplitudes=amplitudes)


def step(state: WalkState, coin: CoinMatrix) -> WalkState:
    """psi_{t+1}(x) = P psi_t(x+1) + Q psi_t(x-1), P/Q the top/bottom rows of the coin."""
    require_unitary(coin)
    routed = state.amplitudes @ coin.matrix.T
    t = state.time
    amplitudes = np.zeros((2 * t + 3, 2), dtype=np.complex128)
    # Row j of the new field is position j - (t + 1).
    amplitudes[: 2 * t + 1, 0] = routed[:, 0]
    amplitudes[2:, 1] = routed[:, 1]
    return WalkState(time=t + 1, amplitudes=amplitudes)


def evolve(state: WalkState, schedule: CoinSchedule, steps: int) -> WalkState:
    """Apply schedule.coin_at(t) for t = state.time .. state.time + steps - 1."""
    if steps < 0:
        raise DomainError(f"steps must be non-negative, got {steps}")
    start = time.perf_counter()
    for t in range(state.time, state.time + steps):
        state = step(state, schedule.coin_at(t))
    if steps:
        record_timing(
            "evolve",
            (time.perf_counter() - start) * 1000,
            kind=schedule.kind.value,
            steps=steps,
            time=state.time,
        )
    return state


def distribution(state: WalkState) -> Distribution:
    """P(X_t = x) = ||psi_t(x)||^2 on the parity-consistent sites -t, -t+2, ..., t."""
    t = state.time
    sites = state.amplitudes[::2]
    probabilities = np.sum(sites.real**2 + sites.imag**2, axis=1)
    positions = np.arange(-t, t + 1, 2, dtype=np.int64)
    return Distribution(time=t, positions=positions, probabilities=probabilities)


def _check_order(r: int) -> None:
    if not 1 <= r <= settings.max_moment_order:
        raise DomainError(f"moment order must lie in 1..{settings.max_moment_order}, got {r}")


def empirical_moment(dist: Distribution, r: int, rescale: bool = False) -> float:
    """E(X_t^r), or E((X_t / t)^r) when rescaled."""
    _check_order(r)
    x = dist.positions.astype(np.float64)
    if rescale:
        if dist.time < 1:
            raise DomainError("rescaled moments need time >= 1")
        x = x / dist.time
    return float(np.sum(x**r * dist.probabilities))


def standard_deviation(dist: Distribution, rescale: bool = False) -> float:
    """sigma(t) = sqrt(E(X^2) - E(X)^2), or sigma(t)/t when rescaled."""
    m1 = empirical_moment(dist, 1, rescale)
    m2 = empirical_moment(dist, 2, rescale)
    variance = m2 - m1 * m1
    if variance < 0:
        logger.debug("Negative variance from rounding clipped", extra={"variance": variance})
        variance = 0.0
    return math.sqrt(variance)
