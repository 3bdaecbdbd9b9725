"""Coin schedules - Coin constructors and the time-dependent sequences {U_t}."""

import math
from typing import Optional, Sequence

import numpy as np

from app.config import settings
from app.errors import DegenerateCoinError, KindError, UnitarityError, ZeroEntryError
from app.models import (
    Case1Spec,
    Case2Spec,
    CoinMatrix,
    CoinSchedule,
    NPeriodSpec,
    OnePeriodSpec,
    ScheduleKind,
    ScheduleSpec,
    TwoPeriodSpec,
)
from app.models.coin import TWO_PI
from app.observability import logger

HALF_PI = math.pi / 2


def _check_angle(theta: float, tolerance: Optional[float], name: str) -> None:
    tol = settings.angle_tolerance if tolerance is None else tolerance
    if not math.isfinite(theta):
        raise DegenerateCoinError(f"{name}={theta} must be finite")
    multiple = round(theta / HALF_PI)
    if abs(theta - multiple * HALF_PI) <= tol:
        raise DegenerateCoinError(
            f"{name}={theta} is within {tol:g} of {multiple}*pi/2; "
            f"coin angles must satisfy theta != n*pi/2 so that abcd != 0"
        )


def orthogonal_coin(theta: float, tolerance: Optional[float] = None, name: str = "theta") -> CoinMatrix:
    """Reflection coin H = [[cos t, sin t], [sin t, -cos t]] (det -1)."""
    _check_angle(theta, tolerance, name)
    c, s = math.cos(theta), math.sin(theta)
    return CoinMatrix(a=c, b=s, c=s, d=-c)


def rotation_coin(theta: float, tolerance: Optional[float] = None, name: str = "theta") -> CoinMatrix:
    """Rotation coin [[cos t, -sin t], [sin t, cos t]] (det +1)."""
    _check_angle(theta, tolerance, name)
    c, s = math.cos(theta), math.sin(theta)
    return CoinMatrix(a=c, b=-s, c=s, d=c)


def phase_rotation(k: float) -> np.ndarray:
    """R(k) = diag(e^{ik}, e^{-ik})."""
    phase = np.exp(1j * math.fmod(k, TWO_PI))
    return np.array([[phase, 0.0], [0.0, phase.conjugate()]], dtype=np.complex128)


def require_unitary(coin: CoinMatrix, name: str = "coin") -> None:
    defect = coin.unitarity_defect()
    if not defect <= settings.unitarity_tolerance:
        raise UnitarityError(
            f"{name} is not unitary: max |U U* - I| = {defect:.3e} "
            f"exceeds {settings.unitarity_tolerance:g}"
        )


def require_nonzero_entries(coin: CoinMatrix, name: str = "coin") -> None:
    for entry in ("a", "b", "c", "d"):
        if abs(getattr(coin, entry)) <= settings.zero_entry_tolerance:
            raise ZeroEntryError(f"{name}.{entry} vanishes; scheduled coins need abcd != 0")


def _validated(coin: CoinMatrix, name: str) -> CoinMatrix:
    require_unitary(coin, name)
    require_nonzero_entries(coin, name)
    return coin


def schedule_one_period(coin: CoinMatrix) -> CoinSchedule:
    return CoinSchedule(kind=ScheduleKind.ONE_PERIOD, coins=(_validated(coin, "coin"),))


def schedule_n_period(coins: Sequence[CoinMatrix]) -> CoinSchedule:
    """Periodic sequence U_t = coins[t mod n] for any n >= 1."""
    checked = tuple(_validated(coin, f"coins[{i}]") for i, coin in enumerate(coins))
    if not checked:
        raise ZeroEntryError("an n-period schedule needs at least one coin")
    return CoinSchedule(kind=ScheduleKind.N_PERIOD, coins=checked)


def schedule_two_period(h0: CoinMatrix, h1: CoinMatrix) -> CoinSchedule:
    """U_{2s} = h0 and U_{2s+1} = h1."""
    return CoinSchedule(
        kind=ScheduleKind.TWO_PERIOD,
        coins=(_validated(h0, "h0"), _validated(h1, "h1")),
    )


def schedule_two_period_orthogonal(
    theta0: float, theta1: float, tolerance: Optional[float] = None
) -> CoinSchedule:
    h0 = orthogonal_coin(theta0, tolerance, name="theta0")
    h1 = orthogonal_coin(theta1, tolerance, name="theta1")
    return schedule_two_period(h0, h1).model_copy(update={"thetas": (theta0, theta1)})


def _phase_family(
    kind: ScheduleKind, a: complex, b: complex, c: complex, d: complex, w0: float, kappa: float
) -> CoinSchedule:
    base = _validated(CoinMatrix(a=a, b=b, c=c, d=d), "base coin")
    return CoinSchedule(kind=kind, base=base, w0=w0, kappa=kappa)


def schedule_case1(
    a: complex, b: complex, c: complex, d: complex, w0: float, kappa1: float
) -> CoinSchedule:
    """U_t = [[a e^{i w_t}, b], [c, d e^{-i w_t}]] with w_{t+1} + w_t = kappa1."""
    return _phase_family(ScheduleKind.CASE1, a, b, c, d, w0, kappa1)


def schedule_case2(
    a: complex, b: complex, c: complex, d: complex, w0: float, kappa2: float
) -> CoinSchedule:
    """U_t = [[a, b e^{i w_t}], [c e^{-i w_t}, d]] with w_{t+1} = w_t + kappa2."""
    return _phase_family(ScheduleKind.CASE2, a, b, c, d, w0, kappa2)


def extract_phase(schedule: CoinSchedule, t: int) -> float:
    """Recover w_t (mod 2 pi) from coin_at(t) by comparison with the base coin."""
    coin = schedule.coin_at(t)
    if schedule.kind == ScheduleKind.CASE1:
        return float(np.angle(coin.a / schedule.base.a))
    if schedule.kind == ScheduleKind.CASE2:
        return float(np.angle(coin.b / schedule.base.b))
    raise KindError(f"phase extraction needs a case1 or case2 schedule, got {schedule.kind.value}")


def conjugation_factors(schedule: CoinSchedule, t: int, phase: Optional[float] = None) -> np.ndarray:
    """R(w/2) U R(+-w/2): the diagonal-phase factorization of U_t."""
    if schedule.kind not in (ScheduleKind.CASE1, ScheduleKind.CASE2):
        raise KindError(
            f"conjugation identity applies to case1/case2 schedules, got {schedule.kind.value}"
        )
    w = schedule.phase_at(t) if phase is None else phase
    right = w / 2 if schedule.kind == ScheduleKind.CASE1 else -w / 2
    return phase_rotation(w / 2) @ schedule.base.matrix @ phase_rotation(right)


def conjugation_identity_check(schedule: CoinSchedule, t: int, phase: Optional[float] = None) -> bool:
    """True iff the factorization reproduces coin_at(t) entrywise within the unitarity tolerance.

    ``phase`` overrides w_t in the factorization only.
    """
    factors = conjugation_factors(schedule, t, phase)
    deviation = float(np.max(np.abs(factors - schedule.coin_at(t).matrix)))
    return deviation <= settings.unitarity_tolerance


def _base_coin(spec: Case1Spec | Case2Spec, angle_tolerance: Optional[float]) -> CoinMatrix:
    if spec.coin is not None:
        return spec.coin
    theta = spec.coin_theta if spec.coin_theta is not None else math.pi / 4
    return orthogonal_coin(theta, angle_tolerance, name="coin_theta")


def build_schedule(spec: ScheduleSpec, angle_tolerance: Optional[float] = None) -> CoinSchedule:
    """Turn a JSON/CLI schedule descriptor into a validated CoinSchedule."""
    if isinstance(spec, TwoPeriodSpec):
        schedule = schedule_two_period_orthogonal(spec.theta0, spec.theta1, angle_tolerance)
    elif isinstance(spec, OnePeriodSpec):
        coin = spec.coin or orthogonal_coin(spec.theta, angle_tolerance)
        schedule = schedule_one_period(coin)
    elif isinstance(spec, NPeriodSpec):
        if spec.coins is not None:
            schedule = schedule_n_period(spec.coins)
        else:
            coins = [
                orthogonal_coin(theta, angle_tolerance, name=f"thetas[{i}]")
                for i, theta in enumerate(spec.thetas)
            ]
            schedule = schedule_n_period(coins).model_copy(update={"thetas": tuple(spec.thetas)})
    else:
        u = _base_coin(spec, angle_tolerance)
        family = schedule_case1 if isinstance(spec, Case1Spec) else schedule_case2
        schedule = family(u.a, u.b, u.c, u.d, spec.w0, spec.kappa)
    logger.info("Schedule built", extra={"kind": schedule.kind.value, "period": schedule.period})
    return schedule
