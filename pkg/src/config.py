"""
Configuration module for the quantization discrimination toolkit.

Experiment defaults (solver, classifiers, synthetic data model, harness)
live in config.yaml at the project root. Command-line flags take
precedence over anything read here.
"""

import logging
import os
import yaml
from typing import Dict, Any, Optional


logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config.yaml"
)

KNOWN_SECTIONS = frozenset(
    {"system", "solver", "knn", "svm", "synthetic", "real_data", "harness"}
)


class Config:
    """YAML-backed experiment defaults, grouped by section."""

    def __init__(self, config_path: Optional[str] = None):
        """
        Args:
            config_path: YAML file to read; config.yaml at the project root when None
        """
        self.config_path = config_path or DEFAULT_CONFIG_PATH
        self.config_data: Dict[str, Any] = {}
        self.load_config()

    def use(self, config_path: Optional[str]) -> None:
        """Point at another YAML file (the default one when None) and reload."""
        self.config_path = config_path or DEFAULT_CONFIG_PATH
        self.load_config()

    def load_config(self) -> None:
        """Read the YAML file; a missing or malformed file leaves every section empty."""
        try:
            with open(self.config_path, "r", encoding="utf-8") as config_file:
                data = yaml.safe_load(config_file) or {}
        except FileNotFoundError:
            logger.warning("Configuration file not found: %s", self.config_path)
            data = {}
        except yaml.YAMLError as e:
            logger.warning("Error parsing configuration file %s: %s", self.config_path, e)
            data = {}

        if not isinstance(data, dict):
            logger.warning("Ignoring configuration file %s: top level is not a mapping", self.config_path)
            data = {}

        unknown = sorted(set(data) - KNOWN_SECTIONS)
        if unknown:
            logger.warning("Unknown configuration sections in %s: %s", self.config_path, ", ".join(unknown))
        self.config_data = data

    def get(self, section: str, key: Optional[str] = None, default: Any = None) -> Any:
        """
        Look up `section.key`, or the whole section when key is None.

        Missing sections, missing keys and explicit nulls all yield `default`.
        """
        section_data = self.config_data.get(section)
        if not isinstance(section_data, dict):
            return default
        if key is None:
            return section_data
        value = section_data.get(key)
        return default if value is None else value

    def set(self, section: str, key: str, value: Any) -> None:
        self.config_data.setdefault(section, {})[key] = value

    def save(self) -> None:
        """Write the current values back to `config_path`."""
        with open(self.config_path, "w", encoding="utf-8") as config_file:
            yaml.safe_dump(self.config_data, config_file, default_flow_style=False, sort_keys=False)


# Global configuration instance
config = Config()
