"""Runtime settings."""

from .settings import (
    DEFAULT_FUEL,
    DEFAULT_TRACE_CAP,
    get_fuel,
    get_trace_cap,
    get_log_level,
    get_workers,
    color_enabled,
)

__all__ = [
    "DEFAULT_FUEL",
    "DEFAULT_TRACE_CAP",
    "get_fuel",
    "get_trace_cap",
    "get_log_level",
    "get_workers",
    "color_enabled",
]
