from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    APP_NAME: str = "UAV Backhaul Formation Simulator"
    APP_VERSION: str = "1.0.0"
    API_V1_STR: str = "/api/v1"

    ENVIRONMENT: str = Field(default="development")
    DEBUG: bool = Field(default=False)

    LOG_LEVEL: str = Field(default="INFO")

    # Simulation defaults (CLI flags and request bodies override these)
    DEFAULT_SEED: int = Field(default=7, ge=0)
    DEFAULT_MAX_ITERATIONS: int = Field(default=500, ge=1)
    DEFAULT_OUTPUT_DIR: str = Field(default="results")

    SWEEP_WORKERS: int = Field(default=1, ge=1)
    ORACLE_MAX_UAVS: int = Field(default=5, ge=1, le=5)
    WRITE_ROUND_EVENTS: bool = Field(default=False)

    RNG_ALGORITHM: str = "PCG64"

    @field_validator("LOG_LEVEL")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        level = (v or "INFO").strip().upper()
        if level not in {"CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"}:
            return "INFO"
        return level

    model_config = SettingsConfigDict(
        env_file=".env.local",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()
