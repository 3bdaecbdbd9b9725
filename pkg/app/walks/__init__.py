"""Time-dependent coined quantum walks: simulation, limit densities, spectra, verification."""

from app.walks.core import new_walk, step, evolve, distribution, empirical_moment, standard_deviation
from app.walks.coins import (
    orthogonal_coin,
    rotation_coin,
    phase_rotation,
    schedule_one_period,
    schedule_n_period,
    schedule_two_period,
    schedule_two_period_orthogonal,
    schedule_case1,
    schedule_case2,
    conjugation_identity_check,
    extract_phase,
    build_schedule,
)
from app.walks.densities import (
    konno_density,
    konno_limit,
    density_value,
    density_cdf,
    density_moment,
    theorem1_density,
    theorem1_density_from_coins,
    theorem2_density,
    theorem3_density,
    limit_density_for_schedule,
)
from app.walks.spectral import (
    symbol,
    two_period_eigensystem,
    group_velocity,
    eigenphases,
    limit_moment_integral,
)
from app.walks.harness import (
    ks_distance,
    case1_reduction_check,
    theorem_equivalence_check,
    convergence_report,
    mixed_pair_report,
)

__all__ = [
    "new_walk",
    "step",
    "evolve",
    "distribution",
    "empirical_moment",
    "standard_deviation",
    "orthogonal_coin",
    "rotation_coin",
    "phase_rotation",
    "schedule_one_period",
    "schedule_n_period",
    "schedule_two_period",
    "schedule_two_period_orthogonal",
    "schedule_case1",
    "schedule_case2",
    "conjugation_identity_check",
    "extract_phase",
    "build_schedule",
    "konno_density",
    "konno_limit",
    "density_value",
    "density_cdf",
    "density_moment",
    "theorem1_density",
    "theorem1_density_from_coins",
    "theorem2_density",
    "theorem3_density",
    "limit_density_for_schedule",
    "symbol",
    "two_period_eigensystem",
    "group_velocity",
    "eigenphases",
    "limit_moment_integral",
    "ks_distance",
    "case1_reduction_check",
    "theorem_equivalence_check",
    "convergence_report",
    "mixed_pair_report",
]
