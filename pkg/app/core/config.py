"""
Configuration settings for ydtwist
"""

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    # Environment
    ENVIRONMENT: str = "development"
    DEBUG: bool = False

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_JSON: bool = False
    LOG_FILE: str = "ydtwist.log"

    # Nichols truncation
    NICHOLS_CAP: int = 6
    NICHOLS_DIM_BOUND: int = 512  # bound on dim V^{⊗d} for any materialized degree

    # Output
    OUTPUT_DIR: str = "./ydtwist_out"
    EXPORT_INDENT: int = 2
    MAX_LISTED_FAILURES: int = 50  # per suite, text report only

    @field_validator("NICHOLS_CAP", "NICHOLS_DIM_BOUND")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be a positive integer")
        return value

    @field_validator("LOG_LEVEL")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return level

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        extra="ignore"
    )


# Create settings instance
settings = Settings()
