"""
Configuration settings for the Gauss-sum factorization toolkit
File: gaussfactor/config.py
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application configuration settings"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="GAUSSFACTOR_",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "Gauss Factor"
    DEBUG: bool = False
    VERSION: str = "1.0.0"
    LOG_LEVEL: str = "WARNING"

    # Scan parallelism (GAUSSFACTOR_THREADS)
    THREADS: int = Field(default=4, ge=1)
    SCAN_BATCH_SIZE: int = Field(default=64, ge=1)

    # Full scans above this n0 need --force
    MAX_FULL_SCAN_N0: int = 10**8

    # Classification
    DEFAULT_THRESHOLD: float = Field(default=0.9, gt=0.0, lt=1.0)

    # Pulse sequence (cycle time t_c = 2 * tau)
    DEFAULT_TAU: float = Field(default=50e-6, gt=0.0)  # seconds
    DEFAULT_T2: float = Field(default=0.2, gt=0.0)  # seconds
    DEFAULT_EPSILON: float = Field(default=1e-5, gt=0.0, lt=0.5)

    # Output
    CSV_DECIMALS: int = 12

    @property
    def default_gamma(self) -> float:
        return 2.0 * self.DEFAULT_TAU / self.DEFAULT_T2


# Global settings instance
settings = Settings()
