"""
Run configuration: defaults from config/run_defaults.yaml, overridden by the
file named in VDC_TOOLKIT_CONFIG and then by command-line flags.
"""
import os
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, List, Optional

import yaml

from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'config')
DEFAULTS_FILE = os.path.join(CONFIG_DIR, 'run_defaults.yaml')
SWEEPS_FILE = os.path.join(CONFIG_DIR, 'sweeps.yaml')
CONFIG_ENV_VAR = 'VDC_TOOLKIT_CONFIG'

OUTPUT_FORMATS = ('json', 'csv')


def _load_yaml(filepath: str) -> Dict[str, Any]:
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            return yaml.safe_load(f) or {}
    except Exception as e:
        logger.error(f"Error loading {filepath}: {e}")
        return {}


def load_sweeps(filepath: str = SWEEPS_FILE) -> Dict[str, Any]:
    """Sweep parameter sets; empty dict when the file cannot be read"""
    return _load_yaml(filepath)


@dataclass(frozen=True)
class RunConfig:
    precision: int = 128
    grid_size: int = 8192
    c1: float = 0.2589
    calibration_q_max: int = 2000
    calibration_M_values: List[int] = field(default_factory=lambda: [100, 1000, 10000])
    calibration_safety_factor: float = 1.25
    output_format: str = 'json'
    max_terms: int = 2_000_000
    max_exhaustive_n: int = 24
    max_heuristic_iterations: int = 2000
    seed: int = 0
    use_cache: bool = True
    log_level: str = 'INFO'

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        """Flatten the nested YAML layout onto the dataclass fields"""
        calibration = data.get('calibration') or {}
        caps = data.get('caps') or {}
        logging_block = data.get('logging') or {}
        flat = {
            'precision': data.get('precision'),
            'grid_size': data.get('grid_size'),
            'c1': data.get('c1'),
            'calibration_q_max': calibration.get('q_max'),
            'calibration_M_values': calibration.get('M_values'),
            'calibration_safety_factor': calibration.get('safety_factor'),
            'output_format': data.get('output_format'),
            'max_terms': caps.get('max_terms'),
            'max_exhaustive_n': caps.get('max_exhaustive_n'),
            'max_heuristic_iterations': caps.get('max_heuristic_iterations'),
            'seed': data.get('seed'),
            'use_cache': data.get('use_cache'),
            'log_level': logging_block.get('level'),
        }
        return cls(**{k: v for k, v in flat.items() if v is not None})

    @classmethod
    def from_yaml(cls, filepath: Optional[str] = None) -> 'RunConfig':
        """
        Load defaults, then the override file (argument or env var) on top.

        Unreadable files are logged and skipped.
        """
        data = _load_yaml(DEFAULTS_FILE)
        override = filepath or os.environ.get(CONFIG_ENV_VAR)
        if override:
            logger.info(f"Loading run configuration from {override}")
            extra = _load_yaml(override)
            for key, value in extra.items():
                if isinstance(value, dict) and isinstance(data.get(key), dict):
                    data[key] = {**data[key], **value}
                else:
                    data[key] = value
        return cls.from_dict(data)

    def with_overrides(self, **overrides) -> 'RunConfig':
        """Copy with every non-None override applied"""
        names = {f.name for f in fields(self)}
        unknown = set(overrides) - names
        if unknown:
            raise DomainError(f"unknown configuration keys: {sorted(unknown)}")
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def validate(self) -> 'RunConfig':
        problems = []
        if self.precision < 53:
            problems.append(f"precision must be at least 53 bits, got {self.precision}")
        if self.grid_size < 2:
            problems.append(f"grid size must be at least 2, got {self.grid_size}")
        if not self.c1 > 0:
            problems.append(f"c1 must be positive, got {self.c1}")
        if self.output_format not in OUTPUT_FORMATS:
            problems.append(f"output format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if self.max_terms < 1 or self.max_exhaustive_n < 1 or self.max_heuristic_iterations < 1:
            problems.append("resource caps must be positive")
        if problems:
            raise DomainError("; ".join(problems))
        return self

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
