"""Application configuration using Pydantic Settings."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Simulation settings loaded from environment variables."""

    model_config = SettingsConfigDict(env_prefix="QWALK_", env_file=".env", extra="ignore")

    # Tolerance ledger
    unitarity_tolerance: float = 1e-12
    normalization_tolerance: float = 1e-10
    angle_tolerance: float = 1e-12
    zero_entry_tolerance: float = 1e-12
    degenerate_eigenvalue_tolerance: float = 1e-10
    degenerate_exclusion_width: float = 1e-4
    density_normalization_tolerance: float = 1e-8
    max_moment_order: int = 16

    # Command-line inputs are typed with six decimals
    cli_angle_tolerance: float = 1e-6
    cli_normalization_tolerance: float = 1e-5

    # Fourier-space quadrature
    k_grid_points: int = 4096
    k_grid_max_points: int = 2**21
    k_grid_tolerance: float = 1e-6

    # Harness policy
    ks_threshold: float = 0.05
    ks_slack: float = 0.01
    default_time: int = 500
    density_grid_points: int = 1001
    density_grid_margin: float = 0.05
    verify_seed: int = 20090612
    verify_parameter_sets: int = 20
    verify_spectral_triples: int = 1000
    verify_case1_time: int = 200
    verify_identity_tolerance: float = 1e-12
    verify_mixed_pair_time: int = 1000

    # Observability
    log_level: str = "INFO"
    service_name: str = "qwalk"


settings = Settings()
