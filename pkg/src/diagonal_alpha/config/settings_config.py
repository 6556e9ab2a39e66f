"""
Settings Configuration Module

This module centralizes the tunable values of the system:
- Enumeration budgets for the brute-force oracle (overridable from the environment)
- Residue-set sumset strategy thresholds
- Logging configuration shared by the CLI and the scripts

Environment variables are read from the process environment and from a `.env`
file at the project root (see `.env.example`).
"""

import os
import sys
import logging
from pathlib import Path
from datetime import datetime
from typing import Optional

from dotenv import load_dotenv

from ..errors import ConfigurationError

project_root = Path(__file__).resolve().parents[3]
load_dotenv(project_root / ".env")

# Oracle limits
ORACLE_CONFIG = {
    "enumeration_budget": 100_000_000,     # max n^t for full enumeration
    "representation_budget": 100_000_000,  # max m for representation searches
    "exponent_bound": 10_000,              # default bound for exponent certification
    "numpy_modulus_limit": 2**31,          # keeps int64 products below 2^62
    "profile_modulus_limit": 1_000_000,    # largest p^(k+1) for a base N-set profile
    "cache_modulus_limit": 65_536,         # image sets above this modulus are never cached
    "cache_entries": 256,                  # per oracle cache
    "memo_entries": 4_096,                 # prime-power results kept by one AlphaCalculator
    "profile_entries": 32,                 # base N-set profiles kept by one AlphaCalculator
}

# Environment variable names
ENV_VARS = {
    "enumeration_budget": "CONGRUENCE_ORACLE_BUDGET",
    "representation_budget": "CONGRUENCE_REPRESENTATION_BUDGET",
}

# Residue set sumset strategy
SUMSET_CONFIG = {
    "rotation_threshold": 64,  # at most this many members: OR of rotations, otherwise FFT
}

# Logging
LOGGING_CONFIG = {
    "level": "WARNING",
    "format": "%(asctime)s - %(levelname)s - %(message)s",
    "log_file_pattern": "congruence_{timestamp}.log",
}


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigurationError(f"{name} must be positive, got {value}")
    return value


def get_oracle_budget() -> int:
    """Maximum number of assignments n^t the oracle may enumerate."""
    return _int_from_env(ENV_VARS["enumeration_budget"], ORACLE_CONFIG["enumeration_budget"])


def get_representation_budget() -> int:
    """Largest integer m a representation search accepts."""
    return _int_from_env(ENV_VARS["representation_budget"], ORACLE_CONFIG["representation_budget"])


def get_exponent_bound() -> int:
    """Bound used when certifying an exponent claim empirically."""
    return ORACLE_CONFIG["exponent_bound"]


def get_modulus_limit() -> int:
    return ORACLE_CONFIG["numpy_modulus_limit"]


def get_profile_limit() -> int:
    """Largest modulus p^(k+1) at which base N-set profiles are computed."""
    return ORACLE_CONFIG["profile_modulus_limit"]


def get_cache_modulus_limit() -> int:
    """Largest modulus whose oracle image sets are kept in memory."""
    return ORACLE_CONFIG["cache_modulus_limit"]


def get_memo_entries() -> int:
    return ORACLE_CONFIG["memo_entries"]


def get_profile_entries() -> int:
    return ORACLE_CONFIG["profile_entries"]


def get_rotation_threshold() -> int:
    return SUMSET_CONFIG["rotation_threshold"]


def setup_logging(level: Optional[str] = None, log_dir: Optional[str] = None) -> logging.Logger:
    """
    Configure root logging the same way for the CLI and the scripts.

    Args:
        level: Logging level name (defaults to LOGGING_CONFIG["level"])
        log_dir: Directory for a timestamped log file; no file when None

    Returns:
        The package logger
    """
    level_name = (level or LOGGING_CONFIG["level"]).upper()
    numeric_level = getattr(logging, level_name, None)
    if not isinstance(numeric_level, int):
        raise ConfigurationError(f"Unknown log level: {level}")

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_dir:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)
        file_name = LOGGING_CONFIG["log_file_pattern"].format(
            timestamp=datetime.now().strftime("%Y%m%d_%H%M%S")
        )
        handlers.append(logging.FileHandler(log_path / file_name))

    logging.basicConfig(
        level=numeric_level,
        format=LOGGING_CONFIG["format"],
        handlers=handlers,
        force=True,
    )
    return logging.getLogger("diagonal_alpha")
