"""Command-line interface."""

from .main import EXIT_BOTTOM, EXIT_DISAGREE, EXIT_ERROR, EXIT_FUEL, EXIT_OK, EXIT_STUCK, build_parser, main

__all__ = [
    "EXIT_BOTTOM",
    "EXIT_DISAGREE",
    "EXIT_ERROR",
    "EXIT_FUEL",
    "EXIT_OK",
    "EXIT_STUCK",
    "build_parser",
    "main",
]
