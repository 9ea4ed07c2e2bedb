"""
Utilities Module
Logging, error types and the on-disk result cache
"""
from utils.logger import setup_logger, set_global_level, LogContext
from utils.errors import (
    ToolkitError,
    DomainError,
    InfeasibleSchemeError,
    ResourceLimitError,
    SolverError,
)
from utils.result_cache import ResultCache, get_cache

__all__ = [
    'setup_logger',
    'set_global_level',
    'LogContext',
    'ToolkitError',
    'DomainError',
    'InfeasibleSchemeError',
    'ResourceLimitError',
    'SolverError',
    'ResultCache',
    'get_cache'
]
