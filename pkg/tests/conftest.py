"""Shared fixtures."""

import pytest

from src.difftest import corpus
from src.parser import parse_program
from src.syntax import Calculus


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Tests never see a developer's CTLCALC_* settings."""
    for name in ("CTLCALC_FUEL", "CTLCALC_TRACE_CAP", "CTLCALC_LOG_LEVEL", "CTLCALC_NO_COLOR", "CTLCALC_WORKERS"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("CTLCALC_LOG_LEVEL", "warning")


@pytest.fixture
def programs():
    """Corpus programs by name."""
    return {name: entry.program for name, entry in corpus().items()}


@pytest.fixture
def parse():
    def _parse(text: str, calculus: str = "mam"):
        return parse_program(text, Calculus(calculus))

    return _parse
