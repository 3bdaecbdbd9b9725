"""Verification harness - Weak-convergence evidence and exact identities.

Every suite runs its cases, times itself, logs a structured summary and
returns a CheckResult that serializes straight to JSON.
"""

import cmath
import math
import time
from typing import Optional, Sequence

import numpy as np
from scipy.stats import unitary_group

from app.config import settings
from app.errors import DomainError
from app.models import (
    CheckResult,
    CoinSchedule,
    ConvergenceRecord,
    ConvergenceReport,
    Distribution,
    LimitDensity,
    Spinor,
)
from app.observability import logger, record_timing
from app.walks import densities, spectral
from app.walks.coins import (
    orthogonal_coin,
    rotation_coin,
    schedule_case1,
    schedule_case2,
    schedule_one_period,
    schedule_two_period,
)
from app.walks.core import distribution, empirical_moment, evolve, new_walk

MOMENT_ORDERS = (1, 2, 3, 4)


def ks_distance(dist: Distribution, d: LimitDensity) -> float:
    """sup over atoms x/t of |F_emp(x/t) - F(x/t)|, F_emp right-continuous."""
    if dist.time < 1:
        raise DomainError("KS distance needs a distribution at time >= 1")
    atoms = dist.positions / dist.time
    empirical = np.cumsum(dist.probabilities)
    limit = np.array([densities.density_cdf(d, float(x)) for x in atoms])
    return float(min(1.0, np.max(np.abs(empirical - limit))))


def case1_reduction_check(
    a: complex,
    b: complex,
    c: complex,
    d: complex,
    w0: float,
    kappa1: float,
    alpha: complex,
    beta: complex,
    t: int,
    reduced_phase: Optional[float] = None,
) -> float:
    """max_x |P_case1(X_t = x) - P_reduced(X_t = x)|.

    The reduced walk uses the constant coin U and the initial spinor
    (e^{i w0/2} alpha, e^{-i w0/2} beta); ``reduced_phase`` replaces w0/2.
    """
    if not 0 <= t <= 2000:
        raise DomainError(f"reduction check supports 0 <= t <= 2000, got {t}")
    half = w0 / 2 if reduced_phase is None else reduced_phase
    case1 = schedule_case1(a, b, c, d, w0, kappa1)
    reduced = schedule_one_period(case1.base)
    left = distribution(evolve(new_walk(alpha, beta), case1, t))
    right = distribution(
        evolve(new_walk(cmath.exp(1j * half) * alpha, cmath.exp(-1j * half) * beta), reduced, t)
    )
    return float(np.max(np.abs(left.probabilities - right.probabilities)))


def theorem_equivalence_check(
    a: float, b: float, c: float, d: float, alpha: complex, beta: complex, points: Optional[int] = None
) -> float:
    """max over a grid of |f_case2(x) - f_two_period(x)|.

    At w_t = pi t the case-2 sequence alternates the two real coins U and
    [[a, -b], [-c, d]], so both limits apply.
    """
    for name, value in (("a", a), ("b", b), ("c", c), ("d", d)):
        if abs(complex(value).imag) > settings.unitarity_tolerance:
            raise DomainError(f"{name} must be real, got {value}")
    a, b, c, d = (complex(v).real for v in (a, b, c, d))
    schedule = schedule_case2(a, b, c, d, 0.0, math.pi)
    h0, h1 = schedule.coin_at(0), schedule.coin_at(1)
    first = densities.theorem1_density_from_coins(h0, h1, alpha, beta)
    third = densities.theorem3_density(a, b, alpha, beta, 0.0)
    margin = settings.density_grid_margin
    scale = max(first.scale, third.scale)
    xs = np.linspace(-scale - margin, scale + margin, points or settings.density_grid_points)
    return float(np.max(np.abs(densities.density_value(third, xs) - densities.density_value(first, xs))))


def _record(dist: Distribution, d: LimitDensity, limit_moments: Sequence[float]) -> ConvergenceRecord:
    errors = [
        abs(empirical_moment(dist, r, rescale=True) - limit)
        for r, limit in zip(MOMENT_ORDERS, limit_moments)
    ]
    return ConvergenceRecord(t=dist.time, ks=ks_distance(dist, d), moment_err=errors)


def convergence_report(
    schedule: CoinSchedule,
    d: LimitDensity,
    t_list: Sequence[int],
    alpha: complex,
    beta: complex,
    ks_threshold: Optional[float] = None,
    ks_slack: Optional[float] = None,
) -> ConvergenceReport:
    """Simulate once up to max(t_list), scoring the walk at each requested time."""
    times = list(t_list)
    if not times or times != sorted(set(times)) or times[0] < 1:
        raise DomainError(f"t_list must be a non-empty ascending list of positive times, got {times}")
    threshold = settings.ks_threshold if ks_threshold is None else ks_threshold
    slack = settings.ks_slack if ks_slack is None else ks_slack
    start = time.perf_counter()

    limit_moments = [densities.density_moment(d, r) for r in MOMENT_ORDERS]
    state = new_walk(alpha, beta)
    records = []
    for t in times:
        state = evolve(state, schedule, t - state.time)
        records.append(_record(distribution(state), d, limit_moments))

    ks_values = [r.ks for r in records]
    monotone = all(later <= earlier + slack for earlier, later in zip(ks_values, ks_values[1:]))
    passed = ks_values[-1] < threshold and monotone
    record_timing(
        "convergence_report",
        (time.perf_counter() - start) * 1000,
        kind=schedule.kind.value,
        final_ks=ks_values[-1],
        passed=passed,
    )
    return ConvergenceReport(schedule=schedule, density=d, records=records, passed=passed)


def mixed_pair_report(
    theta0: float,
    theta1: float,
    alpha: complex,
    beta: complex,
    t_list: Optional[Sequence[int]] = None,
) -> ConvergenceReport:
    """Rotation H_0 = rotation_coin(theta0) alternating with reflection H_1 = orthogonal_coin(theta1).

    det(H1 H0) = -1, so the limit is the scale |a0 a1| branch of the two-period density.
    """
    h0, h1 = rotation_coin(theta0, name="theta0"), orthogonal_coin(theta1, name="theta1")
    d = densities.theorem1_density_from_coins(h0, h1, alpha, beta)
    times = list(t_list) if t_list is not None else [settings.verify_mixed_pair_time]
    return convergence_report(schedule_two_period(h0, h1), d, times, alpha, beta)


def _random_state(rng: np.random.Generator) -> tuple[complex, complex]:
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    z /= np.linalg.norm(z)
    return complex(z[0]), complex(z[1])


def _random_angle(rng: np.random.Generator) -> float:
    # At least 0.1 away from every multiple of pi/2.
    return float(rng.uniform(0.1, math.pi / 2 - 0.1) + rng.integers(0, 4) * math.pi / 2)


def case1_reduction_suite(
    n_sets: Optional[int] = None, t: Optional[int] = None, seed: Optional[int] = None
) -> CheckResult:
    """Case-1 walk vs its one-period reduction for random unitary coins and states."""
    n_sets = n_sets or settings.verify_parameter_sets
    t = t or settings.verify_case1_time
    rng = np.random.default_rng(settings.verify_seed if seed is None else seed)
    start = time.perf_counter()
    errors = []
    for _ in range(n_sets):
        u = unitary_group.rvs(2, random_state=rng)
        w0, kappa1 = (float(v) for v in rng.uniform(-math.pi, math.pi, size=2))
        alpha, beta = _random_state(rng)
        errors.append(case1_reduction_check(*(complex(v) for v in u.ravel()), w0, kappa1, alpha, beta, t))
    return _verdict("case1-reduction", errors, settings.verify_identity_tolerance, start, time=t)


def theorem_equivalence_suite(n_sets: Optional[int] = None, seed: Optional[int] = None) -> CheckResult:
    """Case-2 limit at kappa2 = pi against the two-period limit, for random real orthogonal coins."""
    n_sets = n_sets or settings.verify_parameter_sets
    rng = np.random.default_rng(settings.verify_seed if seed is None else seed)
    start = time.perf_counter()
    errors = []
    for _ in range(n_sets):
        theta = _random_angle(rng)
        coin = orthogonal_coin(theta) if rng.random() < 0.5 else rotation_coin(theta)
        alpha, beta = _random_state(rng)
        a, b, c, d = (z.real for z in (coin.a, coin.b, coin.c, coin.d))
        errors.append(theorem_equivalence_check(a, b, c, d, alpha, beta))
    return _verdict("theorem3-equiv", errors, settings.verify_identity_tolerance, start)


def _generic_angles(rng: np.random.Generator) -> tuple[float, float]:
    """Reflection angles away from the degenerate pairs theta0 +- theta1 = n pi."""
    while True:
        theta0, theta1 = _random_angle(rng), _random_angle(rng)
        if abs(math.sin(theta0 - theta1)) > 0.1 and abs(math.sin(theta0 + theta1)) > 0.1:
            return theta0, theta1


def spectral_suite(
    n_triples: Optional[int] = None, n_sets: Optional[int] = None, seed: Optional[int] = None
) -> CheckResult:
    """Closed-form vs numeric eigenvalues, unit modulus, gradient and support-edge checks,
    and the Fourier-route vs density-route moment agreement for r <= 6.

    The mixed rotation/reflection pair (pi/4, pi/6) started from (1, 0) is scored
    against its det = -1 limit density; its KS distance and first-moment error are
    reported in ``details`` but do not enter the verdict.
    """
    n_triples = n_triples or settings.verify_spectral_triples
    n_sets = n_sets or settings.verify_parameter_sets
    rng = np.random.default_rng(settings.verify_seed if seed is None else seed)
    start = time.perf_counter()
    psi = Spinor(up=1.0, down=0.0)

    eigen_error = modulus_error = 0.0
    for _ in range(n_triples):
        theta0, theta1 = _generic_angles(rng)
        k = float(rng.uniform(0, 2 * math.pi))
        system = spectral.two_period_eigensystem(theta0, theta1, k, psi)
        modulus_error = max(modulus_error, abs(abs(system.lambda0) - 1), abs(abs(system.lambda1) - 1))
        h0 = orthogonal_coin(theta0).matrix
        h1 = orthogonal_coin(theta1).matrix
        r = spectral.phase_rotation(k)
        numeric = np.linalg.eigvals(r @ h1 @ r @ h0)
        numeric = numeric[np.argsort(-numeric.imag)]
        eigen_error = max(eigen_error, float(np.max(np.abs(numeric - [system.lambda0, system.lambda1]))))

    gradient_error = sup_error = moment_error = 0.0
    for _ in range(n_sets):
        theta0, theta1 = _generic_angles(rng)
        for k in rng.uniform(0, 2 * math.pi, size=5):
            for j in (0, 1):
                analytic = spectral.group_velocity(theta0, theta1, float(k), j)
                numeric_h = spectral.finite_difference_velocity(theta0, theta1, float(k), j)
                gradient_error = max(gradient_error, abs(analytic - numeric_h))
        edge = min(abs(math.cos(theta0)), abs(math.cos(theta1)))
        sup_error = max(sup_error, abs(spectral.sup_group_velocity(theta0, theta1) - edge))
        alpha, beta = _random_state(rng)
        density = densities.theorem1_density(theta0, theta1, alpha, beta)
        for order in range(0, 7):
            fourier = spectral.limit_moment_integral(theta0, theta1, alpha, beta, order)
            moment_error = max(moment_error, abs(fourier - densities.density_moment(density, order)))

    mixed = mixed_pair_report(math.pi / 4, math.pi / 6, 1.0, 0.0).records[-1]
    details = {
        "eigenvalue_error": eigen_error,
        "modulus_error": modulus_error,
        "gradient_error": gradient_error,
        "sup_velocity_error": sup_error,
        "moment_error": moment_error,
    }
    reported = {
        "mixed_pair_time": mixed.t,
        "mixed_pair_ks": mixed.ks,
        "mixed_pair_mean_error": mixed.moment_err[0],
    }
    if mixed.ks >= settings.ks_threshold:
        logger.warning("Mixed-pair walk far from its limit density", extra=reported)
    passed = (
        eigen_error < 1e-10
        and modulus_error < 1e-12
        and gradient_error < 1e-5
        and sup_error < 1e-6
        and moment_error < 1e-5
    )
    duration_ms = (time.perf_counter() - start) * 1000
    record_timing("spectral_suite", duration_ms, passed=passed, **details, **reported)
    return CheckResult(
        check="spectral",
        passed=passed,
        max_error=max(details.values()),
        tolerance=1e-5,
        cases=n_triples + n_sets,
        details={**details, **reported},
    )


def _verdict(check: str, errors: list[float], tolerance: float, start: float, **details) -> CheckResult:
    worst = max(errors) if errors else 0.0
    passed = worst < tolerance
    record_timing(check, (time.perf_counter() - start) * 1000, max_error=worst, passed=passed)
    if not passed:
        logger.warning("Verification failed", extra={"check": check, "max_error": worst})
    return CheckResult(
        check=check,
        passed=passed,
        max_error=worst,
        tolerance=tolerance,
        cases=len(errors),
        details=details,
    )
