"""
Process-level settings for prismcalc.

Run configuration (the INI file given with --config) lives in
core/validators.py; these are the defaults it falls back to.
"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from PRISM_* environment variables or a .env file."""

    model_config = SettingsConfigDict(
        env_prefix="PRISM_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = "WARNING"
    log_json: bool = False

    # Computation defaults
    default_seed: int = 20240101
    default_format: str = "json"
    sample_count: int = 25
    witt_cache_size: int = 64

    # Default caps for models built from short CLI strings
    default_precision: int = 4
    default_frobenius_budget: int = 3
    default_exponent_cap: int = 4096
    default_degree_cap: int = 8

    # de Rham-Witt rewriting
    drw_weight_cap: int = 64
    drw_rewrite_steps: int = 10000


# Global settings instance
settings = Settings()
