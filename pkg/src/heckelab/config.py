"""
Configuration loading for heckelab.

Settings come from ``config.ini`` (repository root by default); anything missing
falls back to the defaults declared on :class:`Settings`.
"""

import configparser
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config.ini"
CACHE_ENV_VAR = "HECKELAB_CACHE"


@dataclass(frozen=True)
class Settings:
    """
    Runtime settings.

    Attributes:
        sieve_bound: Largest prime sieved for factorization (inputs up to its square)
        census_bound: Largest group order the brute-force subgroup census accepts
        coefficient_budget: Coefficients a single Hecke computation may touch
        prime_budget: Primes sampled by Galois-group certification
        first_prime: First prime sampled by certification
        cache_dir: Directory of the on-disk coefficient cache
        jobs: Worker processes used by scans
        log_level: Logging level name
        log_file: Optional log file ('' logs to stderr only)
    """

    sieve_bound: int = 1_000_000
    census_bound: int = 5000
    coefficient_budget: int = 2_000_000
    prime_budget: int = 200
    first_prime: int = 5
    cache_dir: str = ".heckelab_cache"
    jobs: int = 1
    log_level: str = "INFO"
    log_file: str = ""


def load_config(path: Optional[Union[str, Path]] = None) -> Settings:
    """
    Load settings from an ini file.

    Args:
        path: Path to the ini file (default: config.ini at the repository root)

    Returns:
        Settings with file values overriding the defaults
    """
    config_path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    parser = configparser.ConfigParser()

    if not parser.read(config_path, encoding="utf-8"):
        logger.debug(f"No configuration at {config_path}, using defaults")
        return Settings()

    defaults = Settings()
    settings = Settings(
        sieve_bound=parser.getint("arith", "sieve_bound", fallback=defaults.sieve_bound),
        census_bound=parser.getint("subgroups", "census_bound", fallback=defaults.census_bound),
        coefficient_budget=parser.getint("hecke", "coefficient_budget",
                                         fallback=defaults.coefficient_budget),
        prime_budget=parser.getint("galois", "prime_budget", fallback=defaults.prime_budget),
        first_prime=parser.getint("galois", "first_prime", fallback=defaults.first_prime),
        cache_dir=parser.get("cache", "cache_dir", fallback=defaults.cache_dir),
        jobs=parser.getint("runtime", "jobs", fallback=defaults.jobs),
        log_level=parser.get("logging", "log_level", fallback=defaults.log_level),
        log_file=parser.get("logging", "log_file", fallback=defaults.log_file),
    )
    logger.debug(f"Loaded configuration from {config_path}")
    return settings


def resolve_cache_dir(flag: Optional[str], settings: Settings) -> Path:
    """
    Pick the cache directory: command-line flag, then environment, then config.

    Args:
        flag: Value of --cache-dir, if given
        settings: Loaded settings

    Returns:
        Cache directory path (not created here)
    """
    if flag:
        return Path(flag)

    env_value = os.environ.get(CACHE_ENV_VAR)
    if env_value:
        return Path(env_value)

    return Path(settings.cache_dir)
