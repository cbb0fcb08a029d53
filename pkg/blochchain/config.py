from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Optional
import os


class Settings(BaseSettings):
    # Application
    LOG_LEVEL: str = "INFO"
    LOG_COLORS: bool = False
    ENVIRONMENT: str = "production"

    # Integrator grid (dt = T_B / STEPS_PER_PERIOD)
    STEPS_PER_PERIOD: int = 4000
    SNAPSHOT_STRIDE: int = 20
    PERIODS: int = 2

    # Observables
    EDGE_THRESHOLD: float = 1e-4

    # Quadrature of the displacement integral
    QUADRATURE_TOLERANCE: float = 1e-9
    QUADRATURE_LIMIT: int = 500

    # Sweeps (None = number of available processors)
    SWEEP_JOBS: Optional[int] = None

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="BLOCHCHAIN_",
        case_sensitive=True,
    )


# Create settings instance
settings = Settings()


def get_sweep_jobs(requested: Optional[int] = None) -> int:
    """Worker count for sweeps: explicit request, then settings, then CPU count"""
    jobs = requested or settings.SWEEP_JOBS or os.cpu_count() or 1
    return max(1, int(jobs))
