"""
Configuration for weylfree
Settings come from the environment (optionally a .env file), then an
optional YAML file, then explicit overrides from the command line
"""

import os
import logging
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

logger = logging.getLogger('config')

# Load environment variables
load_dotenv()

DEFAULT_SEED = 20100101


@dataclass(frozen=True)
class Settings:
    """Bounds and defaults shared by every module"""
    dimension_bound: int = 10 ** 6
    degree_cutoff: int = 3
    scan_degree: int = 3
    max_fock_rank: int = 6
    seed: int = DEFAULT_SEED
    metrics_dir: str = "metrics"
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from WEYLFREE_* environment variables"""
        return cls(
            dimension_bound=int(os.getenv('WEYLFREE_DIMENSION_BOUND', str(10 ** 6))),
            degree_cutoff=int(os.getenv('WEYLFREE_DEGREE_CUTOFF', '3')),
            scan_degree=int(os.getenv('WEYLFREE_SCAN_DEGREE', '3')),
            max_fock_rank=int(os.getenv('WEYLFREE_MAX_FOCK_RANK', '6')),
            seed=int(os.getenv('WEYLFREE_SEED', str(DEFAULT_SEED))),
            metrics_dir=os.getenv('WEYLFREE_METRICS_DIR', 'metrics'),
            log_level=os.getenv('LOG_LEVEL', 'WARNING').upper(),
        )

    def merged(self, overrides: Optional[Dict[str, Any]]) -> "Settings":
        """Return a copy with the known keys of overrides applied

        Args:
            overrides: Mapping of setting name to value; None values are ignored

        Returns:
            Settings: Updated settings
        """
        if not overrides:
            return self
        known = {f.name: f.type for f in fields(self)}
        changes = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                logger.warning(f"Ignoring unknown setting '{key}'")
                continue
            changes[key] = str(value) if key in ('metrics_dir', 'log_level') else int(value)
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def load_settings(config_path: Optional[str] = None,
                  overrides: Optional[Dict[str, Any]] = None) -> Settings:
    """Load settings from environment, YAML file and overrides

    Args:
        config_path: Optional YAML file with lower-case setting keys
        overrides: Optional explicit values (command-line flags)

    Returns:
        Settings: The effective settings
    """
    settings = Settings.from_env()
    if config_path:
        with open(config_path, 'r') as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"Config file {config_path} must contain a mapping")
        settings = settings.merged(data)
        logger.info(f"Loaded settings from {config_path}")
    return settings.merged(overrides)
