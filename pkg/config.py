#!/usr/bin/env python3
"""
Configuration module for the subspace-arrangement ideals toolkit
Manages global settings and computation budgets
"""

import json
import logging
import os
from pathlib import Path
from typing import Dict, Any, List, Optional

logger = logging.getLogger("arrangements.config")

DEFAULT_CONFIG_FILE = Path(__file__).with_name("config.json")


class Config:
    """Global configuration manager"""

    def __init__(self, config_file: Optional[str] = None):
        if config_file is None:
            config_file = os.environ.get("ARRANGEMENTS_CONFIG", str(DEFAULT_CONFIG_FILE))
        self.config_file = config_file
        self.default_config = {
            "groebner": {
                "prime_modulus": 32003,
                "step_budget": None
            },
            "arrangements": {
                "sample_coefficients": [1, 2, 3, 5, 7],
                "samples_per_component": 5
            },
            "invariants": {
                "max_variables": 5,
                "maxdeg_padding": 2
            },
            "dodeca": {
                "method": "fold",
                "step_budget": 2000000
            },
            "cli": {
                "default_sample_orders": 20,
                "default_seed": 0
            },
            "logging": {
                "level": "INFO",
                "file_logging": False,
                "log_dir": "logs"
            }
        }
        self.config = self.load_config()

    def load_config(self) -> Dict[str, Any]:
        """Load configuration from file, falling back to defaults"""
        if os.path.exists(self.config_file):
            try:
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    user_config = json.load(f)
                # Merge with defaults to ensure all keys exist
                return self._merge_configs(self.default_config, user_config)
            except (OSError, ValueError) as e:
                logger.warning(f"Could not load config file {self.config_file}: {e}")
        return self._merge_configs(self.default_config, {})

    def save_config(self, config: Dict[str, Any] = None) -> bool:
        """Save configuration to file"""
        config_to_save = self.config if config is None else config
        try:
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(config_to_save, f, indent=2)
            return True
        except OSError as e:
            logger.error(f"Error saving config: {e}")
            return False

    def _merge_configs(self, default: Dict, user: Dict) -> Dict:
        """Merge user config with defaults"""
        result = {}
        for key, value in default.items():
            result[key] = self._merge_configs(value, {}) if isinstance(value, dict) else value
        for key, value in user.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_configs(result[key], value)
            else:
                result[key] = value
        return result

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dotted key"""
        value = self.config
        try:
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any, persist: bool = False) -> bool:
        """Set configuration value; optionally write it back to the file"""
        keys = key.split('.')
        config = self.config
        for k in keys[:-1]:
            if k not in config or not isinstance(config[k], dict):
                config[k] = {}
            config = config[k]
        config[keys[-1]] = value
        return self.save_config() if persist else True

    def reset(self) -> None:
        """Drop in-memory overrides and reload from file"""
        self.config = self.load_config()


# Global configuration instance
config = Config()


# Convenience functions
def get_prime_modulus() -> int:
    """Modulus of the prime-field pre-screen"""
    return int(config.get("groebner.prime_modulus", 32003))


def get_step_budget() -> Optional[int]:
    """Default S-pair reduction budget for Buchberger runs (None = unlimited)"""
    return config.get("groebner.step_budget")


def get_dodeca_budget() -> Optional[int]:
    """S-pair reduction budget for the 30-line intersection fold"""
    return config.get("dodeca.step_budget")


def get_betti_maxdeg(variable_count: int) -> int:
    """Default truncation degree of Betti tables: 2n + 2 for k[x0..xn]"""
    padding = int(config.get("invariants.maxdeg_padding", 2))
    return 2 * (variable_count - 1) + padding


def get_max_betti_variables() -> int:
    return int(config.get("invariants.max_variables", 5))


def get_sample_coefficients() -> List[int]:
    return list(config.get("arrangements.sample_coefficients", [1, 2, 3, 5, 7]))


def get_log_level() -> str:
    return str(config.get("logging.level", "INFO"))
