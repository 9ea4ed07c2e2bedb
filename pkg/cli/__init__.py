"""
CLI Module
Command-line frontend and run configuration
"""
from cli.run_config import RunConfig, load_sweeps, CONFIG_ENV_VAR
from cli.main import main, build_parser

__all__ = [
    'RunConfig',
    'load_sweeps',
    'CONFIG_ENV_VAR',
    'main',
    'build_parser'
]
