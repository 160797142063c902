"""
Configuration for the twisted-K calculator, loaded from .env and the environment
"""

import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    """Runtime settings; library modules receive these as explicit parameters"""
    step_limit: int = 10 ** 6
    oracle_points: int = 100
    seed: int = 0
    oracle_tolerance: float = 1e-8
    max_workers: int = 4
    output_dir: str = "out"
    log_level: str = "WARNING"


def _int_setting(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def _float_setting(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")


def _validate_config(settings: Settings):
    """Validate the loaded values"""
    if settings.step_limit <= 0:
        raise ValueError("TWK_STEP_LIMIT must be positive")
    if settings.oracle_points <= 0:
        raise ValueError("TWK_ORACLE_POINTS must be positive")
    if settings.oracle_tolerance <= 0:
        raise ValueError("TWK_ORACLE_TOLERANCE must be positive")
    if settings.max_workers <= 0:
        raise ValueError("TWK_MAX_WORKERS must be positive")
    if settings.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise ValueError(f"TWK_LOG_LEVEL {settings.log_level!r} is not a logging level")


def load_settings(config_file: Optional[str] = None) -> Settings:
    """
    Load settings

    Args:
        config_file: Optional path to .env file; values already in the environment win
    """
    load_dotenv(config_file or '.env', override=False)

    defaults = Settings()
    settings = Settings(
        step_limit=_int_setting('TWK_STEP_LIMIT', defaults.step_limit),
        oracle_points=_int_setting('TWK_ORACLE_POINTS', defaults.oracle_points),
        seed=_int_setting('TWK_SEED', defaults.seed),
        oracle_tolerance=_float_setting('TWK_ORACLE_TOLERANCE', defaults.oracle_tolerance),
        max_workers=_int_setting('TWK_MAX_WORKERS', defaults.max_workers),
        output_dir=os.environ.get('TWK_OUTPUT_DIR') or defaults.output_dir,
        log_level=os.environ.get('TWK_LOG_LEVEL') or defaults.log_level,
    )
    _validate_config(settings)
    return settings


def configure_logging(level: str = "WARNING"):
    """Configure the root logger once"""
    logging.basicConfig(level=getattr(logging, level.upper()), format=LOG_FORMAT)
