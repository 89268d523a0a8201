"""
Application configuration using Pydantic settings
"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="LISTRAMSEY_",
        case_sensitive=False,
    )

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = False

    # Search budgets
    DEFAULT_NODE_LIMIT: int = 5_000_000
    DEFAULT_TIME_LIMIT_SECONDS: float = 600.0
    DEFAULT_MEMORY_LIMIT_MB: int = 4096
    DEFAULT_JOBS: int = 1

    # Scale guards
    CHOOSABILITY_PATTERN_BUDGET: int = 2_000_000
    M_OF_H_MAX_EDGES: int = 15

    # Certificates
    CERTIFICATE_VERSION: str = "1.0"

    @property
    def memory_limit_bytes(self) -> int:
        """Get the memory limit in bytes"""
        return self.DEFAULT_MEMORY_LIMIT_MB * 1024 * 1024


# Global settings instance
settings = Settings()
