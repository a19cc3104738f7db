"""
Configuration and logging setup.

Environment variables come from a `.env` file at the repository root; run
parameters come from a TOML config file plus command-line overrides.
"""

from .config import (
    CURRENT_DIR, OUTPUT_DIR, LOG_DIR, LOG_LEVEL, NUM_WORKERS,
    EXACT_OT_CAP, BANDWIDTH_RULE, output_dir_override,
)
from .log_setup import setup_logger

__all__ = [
    'CURRENT_DIR',
    'OUTPUT_DIR',
    'LOG_DIR',
    'LOG_LEVEL',
    'NUM_WORKERS',
    'EXACT_OT_CAP',
    'BANDWIDTH_RULE',
    'output_dir_override',
    'setup_logger',
]
