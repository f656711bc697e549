import os
from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings read from ENTROKIT_* environment variables or a .env file."""

    model_config = SettingsConfigDict(env_prefix="ENTROKIT_", env_file=".env", extra="ignore")

    threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    log_level: str = "INFO"
    cache_dir: Optional[str] = None

    bootstrap_replicas: int = Field(default=1000, ge=2)
    tail_tol: float = Field(default=1e-12, gt=0, le=1e-6)
    hmm_truth_reps: int = Field(default=10, ge=1)
    # multiplier c of the c/sqrt(k) autocorrelogram noise band
    block_noise_band: float = Field(default=2.0, gt=0)


@lru_cache
def get_settings() -> Settings:
    return Settings()
