"""
Configuration Management for facemagic

Loads and validates configuration from:
- YAML files (config/settings.yaml)
- Environment variables (.env)
- Environment variable substitution in YAML (${VAR_NAME})

Environment variables win over YAML values; YAML wins over built-in defaults.
"""

import os
import re
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import yaml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings


# ============================================================
# Configuration Models
# ============================================================

class AppConfig(BaseModel):
    """Application settings."""
    name: str = "facemagic"
    environment: str = "development"


class SearchDefaults(BaseModel):
    """Defaults for exhaustive enumeration runs."""
    workers: int = Field(default=1, ge=1)
    max_nodes: Optional[int] = Field(default=None, ge=1)  # None = unbounded
    pruning: Literal["pure", "lemma"] = "pure"
    up_to_symmetry: bool = True


class LoggingConfig(BaseModel):
    """Logging configuration."""
    level: str = "WARNING"
    format: Literal["console", "json"] = "console"

    @field_validator("level")
    @classmethod
    def _upper_level(cls, v: str) -> str:
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level


# ============================================================
# Environment Settings
# ============================================================

class Settings(BaseSettings):
    """
    Settings read from the environment and an optional .env file.

    Every field is optional: an unset variable leaves the YAML value
    (or the built-in default) in force.
    """

    model_config = {
        "env_file": ".env",
        "case_sensitive": True,
        "extra": "ignore",  # Ignore extra environment variables
    }

    FACEMAGIC_ENV: Optional[str] = None
    FACEMAGIC_CONFIG_DIR: Optional[str] = None
    FACEMAGIC_WORKERS: Optional[int] = None
    FACEMAGIC_MAX_NODES: Optional[int] = None

    # Logging
    LOG_LEVEL: Optional[str] = None
    LOG_FORMAT: Optional[str] = None


# ============================================================
# Configuration Loader
# ============================================================

class ConfigLoader:
    """Loads YAML configuration files from a config directory."""

    _ENV_PATTERN = re.compile(r"\$\{([^}:]+)(?::-([^}]*))?\}")

    def __init__(self, config_dir: Path = Path("config")):
        self.config_dir = config_dir

    def _substitute_env_vars(self, data: Any) -> Any:
        """
        Recursively substitute environment variables in YAML data.

        Replaces ${VAR_NAME} with the value of VAR_NAME and
        ${VAR_NAME:-default} with the default when VAR_NAME is unset.
        """
        if isinstance(data, dict):
            return {k: self._substitute_env_vars(v) for k, v in data.items()}
        if isinstance(data, list):
            return [self._substitute_env_vars(item) for item in data]
        if isinstance(data, str):
            return self._ENV_PATTERN.sub(
                lambda match: os.getenv(match.group(1), match.group(2) or ""), data
            )
        return data

    def load_yaml(self, filename: str) -> Dict[str, Any]:
        """Load and parse a YAML configuration file."""
        filepath = self.config_dir / filename

        if not filepath.exists():
            raise FileNotFoundError(f"Configuration file not found: {filepath}")

        with open(filepath, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}

        if not isinstance(data, dict):
            raise ValueError(f"Configuration file must hold a mapping: {filepath}")

        return self._substitute_env_vars(data)

    def load_settings_yaml(self) -> Dict[str, Any]:
        """Load settings.yaml."""
        return self.load_yaml("settings.yaml")


# ============================================================
# Global Configuration
# ============================================================

class GlobalConfig:
    """Global configuration object combining all sources."""

    def __init__(self, config_dir: Optional[Path] = None, env: Optional[Settings] = None):
        env = env or Settings()
        self.load_warnings: List[str] = []

        if config_dir is None:
            config_dir = Path(env.FACEMAGIC_CONFIG_DIR or "config")
        self.config_dir = config_dir

        try:
            raw = ConfigLoader(config_dir).load_settings_yaml()
        except FileNotFoundError as e:
            # Library use outside the repo checkout: defaults are complete
            self.load_warnings.append(str(e))
            raw = {}

        self.app = AppConfig(**raw.get("app", {}))
        self.search = SearchDefaults(**raw.get("search", {}))
        self.logging = LoggingConfig(**raw.get("logging", {}))

        if env.FACEMAGIC_ENV:
            self.app = self.app.model_copy(update={"environment": env.FACEMAGIC_ENV})
        if env.FACEMAGIC_WORKERS is not None:
            self.search = SearchDefaults(
                **{**self.search.model_dump(), "workers": env.FACEMAGIC_WORKERS}
            )
        if env.FACEMAGIC_MAX_NODES is not None:
            self.search = SearchDefaults(
                **{**self.search.model_dump(), "max_nodes": env.FACEMAGIC_MAX_NODES}
            )
        if env.LOG_LEVEL or env.LOG_FORMAT:
            self.logging = LoggingConfig(
                level=env.LOG_LEVEL or self.logging.level,
                format=env.LOG_FORMAT or self.logging.format,
            )

    @property
    def is_development(self) -> bool:
        return self.app.environment == "development"


# Global settings instance
settings = GlobalConfig()
