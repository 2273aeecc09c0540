"""
Configuration management for power-cover.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

ENGINES = ["brute", "branch-p", "branch-k", "hybrid-k", "tw-exact", "tw-approx"]


class SolverConfig(BaseModel):
    """Main configuration for power-cover."""

    # Solver settings
    oracle_edge_limit: int = 24
    default_engine: str = "tw-exact"
    default_eps: str = "1/2"

    # Sweep settings
    sweep_workers: int = 1
    parallel_sweep: bool = False

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Custom settings
    custom_settings: Dict[str, Any] = Field(default_factory=dict)


class Config:
    """
    Configuration manager for power-cover.

    Sources, later ones winning:
    - Default values
    - Configuration file (JSON, YAML, TOML), explicit or auto-discovered
    - Environment variables, including a ``.env`` file
    """

    CONFIG_FILE_NAMES = [
        "power-cover.config.json",
        "power-cover.config.yaml",
        "power-cover.config.toml",
        ".powercoverrc",
        ".powercoverrc.json",
    ]

    ENV_PREFIX = "POWER_COVER_"

    INT_KEYS = ["oracle_edge_limit", "sweep_workers"]
    BOOL_KEYS = ["parallel_sweep"]

    def __init__(
        self,
        config_file: Optional[str] = None,
        load_env: bool = True,
        log_level: Optional[str] = None,
    ):
        """
        Initialize the configuration manager.

        Args:
            config_file: Path to configuration file
            load_env: Whether to load from environment variables
            log_level: Level that overrides every other source, e.g. DEBUG for --debug
        """
        self._config = SolverConfig()

        if load_env:
            load_dotenv()

        if config_file:
            self._load_from_file(config_file)
        else:
            self._auto_discover_config()

        if load_env:
            self._load_from_env()

        if log_level:
            self._config.log_level = log_level

        self._validate()

    def _auto_discover_config(self) -> None:
        """Auto-discover a configuration file in the working directory."""
        for filename in self.CONFIG_FILE_NAMES:
            config_path = Path(filename)
            if config_path.exists():
                logger.info(f"Found configuration file: {filename}")
                self._load_from_file(str(config_path))
                break

    def _load_from_file(self, file_path: str) -> None:
        """
        Load configuration from file.

        Args:
            file_path: Path to configuration file
        """
        path = Path(file_path)

        if not path.exists():
            logger.warning(f"Configuration file not found: {file_path}")
            return

        try:
            if path.suffix in [".yaml", ".yml"]:
                try:
                    import yaml

                    with open(path) as f:
                        self._update_config(yaml.safe_load(f) or {})
                except ImportError:
                    logger.warning("PyYAML not installed, cannot load YAML config")
                    return

            elif path.suffix == ".toml":
                try:
                    import toml

                    with open(path) as f:
                        self._update_config(toml.load(f))
                except ImportError:
                    logger.warning("toml not installed, cannot load TOML config")
                    return

            else:
                # .json and the rc files
                with open(path) as f:
                    self._update_config(json.load(f))

            logger.info(f"Loaded configuration from {file_path}")

        except Exception as e:
            logger.error(f"Error loading configuration from {file_path}: {e}")

    def _load_from_env(self) -> None:
        """Load configuration from ``POWER_COVER_*`` environment variables."""
        for key in SolverConfig.model_fields:
            if key == "custom_settings":
                continue
            value = os.environ.get(f"{self.ENV_PREFIX}{key.upper()}")
            if not value:
                continue
            converted: Any = value
            if key in self.INT_KEYS:
                try:
                    converted = int(value)
                except ValueError:
                    logger.warning(f"Ignoring non-integer {self.ENV_PREFIX}{key.upper()}={value}")
                    continue
            elif key in self.BOOL_KEYS:
                converted = value.lower() in ["true", "1", "yes", "on"]
            setattr(self._config, key, converted)
            logger.debug(f"Loaded {key} from environment variable")

    def _update_config(self, data: Dict[str, Any]) -> None:
        """
        Update configuration with data from dictionary.

        Args:
            data: Configuration data
        """
        for key, value in data.items():
            if key in SolverConfig.model_fields and key != "custom_settings":
                setattr(self._config, key, value)
            else:
                self._config.custom_settings[key] = value

    def _validate(self) -> None:
        """Validate the configuration and set up logging."""
        if self._config.oracle_edge_limit < 1:
            logger.warning(
                f"oracle_edge_limit {self._config.oracle_edge_limit} < 1, using 24"
            )
            self._config.oracle_edge_limit = 24
        if self._config.sweep_workers < 1:
            logger.warning(f"sweep_workers {self._config.sweep_workers} < 1, using 1")
            self._config.sweep_workers = 1
        if self._config.default_engine not in ENGINES:
            logger.warning(f"Unknown default engine {self._config.default_engine}, using tw-exact")
            self._config.default_engine = "tw-exact"

        level = getattr(logging, self._config.log_level.upper(), logging.INFO)
        logging.basicConfig(
            level=level,
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        )

        if self._config.log_file:
            file_handler = logging.FileHandler(self._config.log_file)
            file_handler.setLevel(level)
            logging.getLogger().addHandler(file_handler)

    @property
    def oracle_edge_limit(self) -> int:
        return self._config.oracle_edge_limit

    @property
    def default_engine(self) -> str:
        return self._config.default_engine

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value.

        Args:
            key: Configuration key
            default: Default value if not found

        Returns:
            Configuration value or default
        """
        if hasattr(self._config, key):
            return getattr(self._config, key)

        return self._config.custom_settings.get(key, default)

    def set(self, key: str, value: Any) -> None:
        """
        Set a configuration value.

        Args:
            key: Configuration key
            value: Configuration value
        """
        if hasattr(self._config, key):
            setattr(self._config, key, value)
        else:
            self._config.custom_settings[key] = value

    def to_dict(self) -> Dict[str, Any]:
        """Configuration as a dictionary."""
        return self._config.model_dump()

    def save(self, file_path: str) -> None:
        """
        Save configuration to a JSON file.

        Args:
            file_path: Path to save configuration
        """
        with open(Path(file_path), "w") as f:
            json.dump(self.to_dict(), f, indent=2)

        logger.info(f"Saved configuration to {file_path}")
