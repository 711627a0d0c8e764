"""
Configuration management for quotient_germs.
"""

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from .logger import get_logger


CONFIG_FILES = [
    '.quotient_germs.yaml',
    '.quotient_germs.yml',
    'quotient_germs.yaml',
    'quotient_germs.yml',
]

DEFAULT_SEED = 20240601

OUTPUT_FORMATS = ('human', 'json')


class Config:
    """YAML-backed settings for sweeps and reports."""

    def __init__(self, config_data: Dict[str, Any] = None):
        self.data = config_data or {}
        self.logger = get_logger()

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> 'Config':
        """Load configuration from an explicit path or the first file found in the working directory."""
        if config_path:
            config_file = Path(config_path)
        else:
            config_file = next((Path(name) for name in CONFIG_FILES if Path(name).exists()), None)

        if config_file and config_file.exists():
            return cls._load_from_file(config_file)
        return cls()

    @classmethod
    def _load_from_file(cls, config_file: Path) -> 'Config':
        logger = get_logger()

        try:
            with open(config_file, 'r') as f:
                config_data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            logger.error(f"Failed to load configuration from {config_file}: {e}")
            return cls()

        if not isinstance(config_data, dict):
            logger.error(f"Ignoring {config_file}: top level is not a mapping")
            return cls()
        logger.info(f"Loaded configuration from {config_file}")
        return cls(config_data)

    def get(self, key: str, default: Any = None) -> Any:
        return self.data.get(key, default)

    def get_nested(self, path: str, default: Any = None) -> Any:
        """Get a nested configuration value using dot notation."""
        value = self.data
        for key in path.split('.'):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default
        return value

    def save(self, config_path: str) -> bool:
        config_file = Path(config_path)
        try:
            with open(config_file, 'w') as f:
                yaml.safe_dump(self.data, f, default_flow_style=False)
        except OSError as e:
            self.logger.error(f"Failed to save configuration to {config_file}: {e}")
            return False
        self.logger.info(f"Configuration saved to {config_file}")
        return True

    @classmethod
    def defaults(cls) -> 'Config':
        """Every setting RunConfig reads from a file, at its default value."""
        return cls({
            'sweep': {
                'max_n': 200,
                'max_b': 10,
                'max_m': 20,
            },
            'output': {
                'format': 'human',
            },
            'run': {
                'jobs': 1,
                'seed': DEFAULT_SEED,
                'samples': 50,
            },
            'logging': {
                'level': 'WARNING',
            },
        })

    def create_default_config(self, config_path: str = CONFIG_FILES[0]) -> bool:
        """Write a configuration file holding every default, unless one exists."""
        config_file = Path(config_path)
        if config_file.exists():
            self.logger.warning(f"Configuration file already exists: {config_file}")
            return False
        return self.defaults().save(str(config_file))

    def __getitem__(self, key: str) -> Any:
        return self.data[key]

    def __contains__(self, key: str) -> bool:
        return key in self.data

    def __repr__(self) -> str:
        return f"Config({self.data})"


# RunConfig field -> dotted key in the YAML file
CONFIG_KEYS = {
    'max_n': 'sweep.max_n',
    'max_b': 'sweep.max_b',
    'max_m': 'sweep.max_m',
    'output_format': 'output.format',
    'jobs': 'run.jobs',
    'seed': 'run.seed',
    'samples': 'run.samples',
}


@dataclass
class RunConfig:
    """Everything one CLI invocation needs: defaults, then the YAML file, then flags."""

    subcommand: str = ''
    inputs: List[str] = field(default_factory=list)
    max_n: int = 200
    max_b: int = 10
    max_m: int = 20
    output_format: str = 'human'
    jobs: int = 1
    seed: int = DEFAULT_SEED
    samples: int = 50
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        for name in ('max_n', 'max_b', 'max_m', 'jobs', 'samples'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    @classmethod
    def from_sources(cls, config: Optional[Config] = None, **overrides: Any) -> 'RunConfig':
        """Build from a loaded Config plus explicit overrides; None overrides are ignored."""
        values: Dict[str, Any] = {}
        if config is not None:
            for name, path in CONFIG_KEYS.items():
                value = config.get_nested(path)
                if value is not None:
                    values[name] = value
        known = {f.name for f in fields(cls)}
        for name, value in overrides.items():
            if value is None:
                continue
            if name not in known:
                raise ValueError(f"unknown run setting {name!r}")
            values[name] = value
        return cls(**values)

    @property
    def json_output(self) -> bool:
        return self.output_format == 'json'

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
