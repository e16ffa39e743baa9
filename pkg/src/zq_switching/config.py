"""Configuration for zq-switching"""

import os
import sys
from pathlib import Path

from loguru import logger

# Base directory for relative JSON inputs
DEFAULT_DATA_DIR = os.getenv(
    "ZQ_SWITCHING_DATA_DIR",
    str(Path.cwd())
)

# Census enumeration budget (number of 0-isolated edge assignments)
DEFAULT_BUDGET = int(os.getenv("ZQ_SWITCHING_BUDGET", str(10**8)))

# Dense function tables: q^n entries
DEFAULT_TABLE_CAP = int(os.getenv("ZQ_SWITCHING_TABLE_CAP", str(2 * 10**6)))

# Quasigroup tables: m^n entries
DEFAULT_QG_CAP = int(os.getenv("ZQ_SWITCHING_QG_CAP", str(10**7)))

DEFAULT_JOBS = int(os.getenv("ZQ_SWITCHING_JOBS", "1"))
DEFAULT_SAMPLES = int(os.getenv("ZQ_SWITCHING_SAMPLES", str(10**4)))
DEFAULT_SEED = int(os.getenv("ZQ_SWITCHING_SEED", "1"))

LOG_LEVEL = os.getenv("FASTMCP_LOG_LEVEL", "WARNING")


def setup_logging(level: str = None) -> None:
    """Route loguru output to stderr at the configured level."""
    logger.remove()
    logger.add(sys.stderr, level=level or LOG_LEVEL)


def get_data_directory() -> Path:
    """Get the configured data directory path."""
    return Path(DEFAULT_DATA_DIR)


def resolve_data_path(name: str) -> Path:
    """
    Resolve a JSON input name to an absolute path.

    Absolute paths are used as-is; relative ones are resolved against the
    configured data directory.

    Args:
        name: File path (e.g., "g5.json", "/tmp/family.json")

    Returns:
        Resolved Path object
    """
    path = Path(name)

    if path.is_absolute():
        return path

    return get_data_directory() / name
