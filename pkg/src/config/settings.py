"""Settings read from the environment (and an optional .env file)."""

import os

from dotenv import load_dotenv

load_dotenv()

DEFAULT_FUEL = 100_000
DEFAULT_TRACE_CAP = 10_000
DEFAULT_LOG_LEVEL = "info"
LOG_LEVELS = ("debug", "info", "warning", "error", "quiet")


def _int_env(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        value = None
    if value is None or value < minimum:
        # imported here: the logger reads its own level from this module
        from src.logger import log_warning

        log_warning(f"Ignoring {name}={raw!r}, using {default}")
        return default
    return value


def get_fuel() -> int:
    """Default fuel for evaluations started from the command line."""
    return _int_env("CTLCALC_FUEL", DEFAULT_FUEL)


def get_trace_cap() -> int:
    return _int_env("CTLCALC_TRACE_CAP", DEFAULT_TRACE_CAP)


def get_workers() -> int:
    return _int_env("CTLCALC_WORKERS", 1, minimum=1)


def get_log_level() -> str:
    level = os.getenv("CTLCALC_LOG_LEVEL", DEFAULT_LOG_LEVEL).strip().lower()
    return level if level in LOG_LEVELS else DEFAULT_LOG_LEVEL


def color_enabled() -> bool:
    if os.getenv("CTLCALC_NO_COLOR") or os.getenv("NO_COLOR"):
        return False
    return True
