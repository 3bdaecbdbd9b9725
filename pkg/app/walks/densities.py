"""Limit densities - Closed-form weak-limit densities, their CDFs and moments.

All quadratures substitute x = scale * sin(u), u in (-pi/2, pi/2), which turns
f_K(x) dx into the smooth measure sqrt(1 - s^2) / (pi (1 - s^2 sin^2 u)) du and
removes the inverse-square-root divergence at the support edges.
"""

import math
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate

from app.config import settings
from app.errors import DomainError, EqualAngleError, InternalError, NormalizationError
from app.models import CoinMatrix, CoinSchedule, DensityProvenance, LimitDensity, ScheduleKind
from app.observability import logger
from app.walks.coins import orthogonal_coin

HALF_PI = math.pi / 2


def konno_density(x: ArrayLike, a_mod: float) -> Union[float, np.ndarray]:
    """f_K(x; a) = sqrt(1 - a^2) / (pi (1 - x^2) sqrt(a^2 - x^2)) on (-a, a), else 0."""
    if not 0.0 < a_mod < 1.0:
        raise DomainError(f"a_mod must lie in (0, 1), got {a_mod}")
    xs = np.asarray(x, dtype=np.float64)
    inside = np.abs(xs) < a_mod
    safe = np.where(inside, xs, 0.0)
    values = math.sqrt(1.0 - a_mod**2) / (math.pi * (1.0 - safe**2) * np.sqrt(a_mod**2 - safe**2))
    values = np.where(inside, values, 0.0)
    return float(values) if values.ndim == 0 else values


def density_value(d: LimitDensity, x: ArrayLike) -> Union[float, np.ndarray]:
    """f(x) = f_K(x; scale) * (1 - w x)."""
    xs = np.asarray(x, dtype=np.float64)
    values = konno_density(xs, d.scale) * (1.0 - d.weight_constant * xs)
    return float(values) if np.ndim(values) == 0 else values


def _transformed(d: LimitDensity, r: int):
    s, w = d.scale, d.weight_constant
    prefactor = math.sqrt(1.0 - s * s) / math.pi

    def integrand(u: float) -> float:
        x = s * math.sin(u)
        return x**r * (1.0 - w * x) * prefactor / (1.0 - x * x)

    return integrand


def _quad(d: LimitDensity, r: int, upper: float) -> float:
    value, _ = integrate.quad(_transformed(d, r), -HALF_PI, upper, epsabs=1e-14, epsrel=1e-12, limit=200)
    return value


def density_cdf(d: LimitDensity, x: float) -> float:
    """F(x) = integral of f from -scale to x."""
    if x <= -d.scale:
        return 0.0
    if x >= d.scale:
        return 1.0
    value = _quad(d, 0, math.asin(x / d.scale))
    return min(1.0, max(0.0, value))


def density_moment(d: LimitDensity, r: int) -> float:
    """Integral of x^r f(x) over the support."""
    if not 0 <= r <= settings.max_moment_order:
        raise DomainError(f"moment order must lie in 0..{settings.max_moment_order}, got {r}")
    return _quad(d, r, HALF_PI)


def _build(scale: float, weight: float, provenance: DensityProvenance) -> LimitDensity:
    if not 0.0 < scale < 1.0:
        raise DomainError(f"support half-width must lie in (0, 1), got {scale}")
    density = LimitDensity(scale=scale, weight_constant=weight, provenance=provenance)
    # min of (1 - w x) over the support sits at an endpoint
    if 1.0 - abs(weight) * scale < -1e-12:
        raise InternalError(f"density would be negative: |w| * scale = {abs(weight) * scale:.6g} > 1")
    total = density_moment(density, 0)
    if abs(total - 1.0) > settings.density_normalization_tolerance:
        raise InternalError(f"density integrates to {total:.12g}, not 1")
    logger.debug(
        "Limit density built",
        extra={"provenance": provenance.value, "scale": scale, "weight": weight},
    )
    return density


def konno_limit(scale: float) -> LimitDensity:
    """Pure f_K(.; scale) with no skew."""
    return _build(scale, 0.0, DensityProvenance.KONNO)


def _require_normalized(alpha: complex, beta: complex) -> None:
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if not abs(norm - 1.0) <= settings.normalization_tolerance:
        raise NormalizationError(
            f"initial spinor must satisfy |alpha|^2 + |beta|^2 = 1, got {norm:.12g}"
        )


def _real_entry(value: complex, name: str) -> float:
    if abs(value.imag) > settings.unitarity_tolerance:
        raise DomainError(f"{name} must be real for an orthogonal coin, got {value}")
    return value.real


def theorem1_density_from_coins(
    h0: CoinMatrix, h1: CoinMatrix, alpha: complex, beta: complex
) -> LimitDensity:
    """Two-period limit for general real orthogonal H0, H1; the branch follows det(H1 H0)."""
    _require_normalized(alpha, beta)
    entries = {}
    for label, coin in (("h0", h0), ("h1", h1)):
        for name in ("a", "b", "c", "d"):
            entries[f"{label}.{name}"] = _real_entry(getattr(coin, name), f"{label}.{name}")
        matrix = coin.matrix.real
        if np.max(np.abs(matrix @ matrix.T - np.eye(2))) > settings.unitarity_tolerance:
            raise DomainError(f"{label} must be orthogonal")
    a0, b0, a1 = entries["h0.a"], entries["h0.b"], entries["h1.a"]
    if a0 == 0.0 or a1 == 0.0 or b0 == 0.0:
        raise DomainError("orthogonal coins need nonzero entries")
    if np.max(np.abs(h0.matrix - h1.matrix)) <= settings.angle_tolerance:
        raise EqualAngleError("H0 and H1 coincide (theta0 == theta1); the walk is one-period")
    det = float(np.linalg.det(h1.matrix.real @ h0.matrix.real))
    if abs(abs(det) - 1.0) > 1e-10:
        raise InternalError(f"|det(H1 H0)| = {abs(det):.12g} deviates from 1")
    if det > 0:
        scale, provenance = min(abs(a0), abs(a1)), DensityProvenance.THEOREM1_POSITIVE_DET
    else:
        scale, provenance = abs(a0 * a1), DensityProvenance.THEOREM1_NEGATIVE_DET
    cross = (alpha * beta.conjugate() + alpha.conjugate() * beta).real
    weight = abs(alpha) ** 2 - abs(beta) ** 2 + cross * b0 / a0
    return _build(scale, weight, provenance)


def theorem1_density(theta0: float, theta1: float, alpha: complex, beta: complex) -> LimitDensity:
    """Two-period limit for reflection coins H_gamma = [[cos, sin], [sin, -cos]]."""
    h0 = orthogonal_coin(theta0, name="theta0")
    h1 = orthogonal_coin(theta1, name="theta1")
    if abs(theta0 - theta1) <= settings.angle_tolerance:
        raise EqualAngleError(f"theta0 and theta1 must differ, both are {theta0}")
    return theorem1_density_from_coins(h0, h1, alpha, beta)


def _phase_family_density(
    a: complex, b: complex, alpha: complex, beta: complex, w0: float, sign: int, provenance
) -> LimitDensity:
    a, b, alpha, beta = complex(a), complex(b), complex(alpha), complex(beta)
    _require_normalized(alpha, beta)
    if not 0.0 < abs(a) < 1.0:
        raise DomainError(f"|a| must lie in (0, 1), got {abs(a)}")
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > settings.normalization_tolerance:
        raise DomainError("(a, b) must be the first row of a unitary coin: |a|^2 + |b|^2 = 1")
    phase = complex(np.exp(sign * 1j * math.fmod(w0, 2 * math.pi)))
    cross = a * alpha * (b * beta).conjugate() * phase
    cross = (cross + cross.conjugate()) / abs(a) ** 2
    if abs(cross.imag) > 1e-12:
        raise InternalError(f"weight constant has imaginary part {cross.imag:.3e}")
    weight = abs(alpha) ** 2 - abs(beta) ** 2 + cross.real
    return _build(abs(a), weight, provenance)


def theorem2_density(a: complex, b: complex, alpha: complex, beta: complex, w0: float) -> LimitDensity:
    """Case-1 limit: skew cross term carries e^{+i w0}."""
    return _phase_family_density(a, b, alpha, beta, w0, +1, DensityProvenance.THEOREM2)


def theorem3_density(a: complex, b: complex, alpha: complex, beta: complex, w0: float) -> LimitDensity:
    """Case-2 limit: as the Case-1 limit with e^{i w0} and e^{-i w0} swapped."""
    return _phase_family_density(a, b, alpha, beta, w0, -1, DensityProvenance.THEOREM3)


def limit_density_for_schedule(schedule: CoinSchedule, alpha: complex, beta: complex) -> LimitDensity:
    """The closed-form limit density of a schedule, where one is known."""
    coins = schedule.coins
    if schedule.kind == ScheduleKind.CASE1:
        return theorem2_density(schedule.base.a, schedule.base.b, alpha, beta, schedule.w0)
    if schedule.kind == ScheduleKind.CASE2:
        return theorem3_density(schedule.base.a, schedule.base.b, alpha, beta, schedule.w0)
    if len(coins) == 1:
        # A constant coin is the case1 family with w_t = 0.
        return theorem2_density(coins[0].a, coins[0].b, alpha, beta, 0.0)
    if len(coins) == 2:
        return theorem1_density_from_coins(coins[0], coins[1], alpha, beta)
    raise DomainError(f"no closed-form limit density for {len(coins)}-period schedules")


def density_grid(
    d: LimitDensity, points: Optional[int] = None, margin: Optional[float] = None
) -> tuple[np.ndarray, np.ndarray]:
    """Uniform (x, f) samples over [-scale - margin, scale + margin]."""
    points = points or settings.density_grid_points
    margin = settings.density_grid_margin if margin is None else margin
    xs = np.linspace(-d.scale - margin, d.scale + margin, points)
    return xs, density_value(d, xs)
