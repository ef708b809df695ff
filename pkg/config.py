"""
Runtime configuration - every knob comes from the environment.

A local `.env` file is honoured (python-dotenv), so a checkout can pin its
catalog location or turn on the slow test sweeps without touching code.
"""

import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv

load_dotenv()

_DIR = os.path.dirname(os.path.abspath(__file__))


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def _env_flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class Settings:
    db_path: str
    max_enum_n: int          # n!-scale searches (completeness checks, brute force)
    max_tiling_n: int        # flip-graph enumeration
    sigma_limit: int         # largest n for which Σ(T) is materialized
    full_universe_n: int     # largest n for the 2^n candidate universe
    log_level: str
    slow_tests: bool


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings(
        db_path=os.getenv("CONDORCET_DB_PATH") or os.path.join(_DIR, "condorcet_tilings.db"),
        max_enum_n=_env_int("CONDORCET_MAX_ENUM_N", 8),
        max_tiling_n=_env_int("CONDORCET_MAX_TILING_N", 7),
        sigma_limit=_env_int("CONDORCET_SIGMA_LIMIT", 16),
        full_universe_n=_env_int("CONDORCET_FULL_UNIVERSE_N", 20),
        log_level=os.getenv("CONDORCET_LOG_LEVEL", "WARNING").upper(),
        slow_tests=_env_flag("CONDORCET_SLOW_TESTS"),
    )
