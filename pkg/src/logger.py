"""Colored logging to standard error."""

import sys

from src.config.settings import LOG_LEVELS, color_enabled, get_log_level


# Color codes for better logging
class Colors:
    PURPLE = "\033[95m"
    CYAN = "\033[96m"
    DARKCYAN = "\033[36m"
    BLUE = "\033[94m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    BOLD = "\033[1m"
    END = "\033[0m"


def _enabled(level: str) -> bool:
    return LOG_LEVELS.index(level) >= LOG_LEVELS.index(get_log_level())


def _emit(text: str, color: str) -> None:
    stream = sys.stderr
    if color_enabled() and stream.isatty():
        text = f"{color}{text}{Colors.END}"
    print(text, file=stream)


def log_debug(message: str):
    """Log debug message (machine steps, template instantiation)"""
    if _enabled("debug"):
        _emit(f"·  {message}", Colors.DARKCYAN)


def log_info(message: str, color: str = Colors.CYAN):
    """Log info message with color"""
    if _enabled("info"):
        _emit(f"ℹ️  {message}", color)


def log_success(message: str):
    """Log success message in green"""
    if _enabled("info"):
        _emit(f"✅ {message}", Colors.GREEN)


def log_warning(message: str):
    """Log warning message in yellow"""
    if _enabled("warning"):
        _emit(f"⚠️  {message}", Colors.YELLOW)


def log_error(message: str):
    """Log error message in red"""
    if _enabled("error"):
        _emit(f"❌ {message}", Colors.RED)


def log_header(message: str):
    """Log header message with emphasis"""
    if not _enabled("info"):
        return
    bar = "=" * 60
    _emit(f"\n{bar}", Colors.BOLD + Colors.PURPLE)
    _emit(f"🚀 {message}", Colors.BOLD + Colors.PURPLE)
    _emit(f"{bar}\n", Colors.BOLD + Colors.PURPLE)
