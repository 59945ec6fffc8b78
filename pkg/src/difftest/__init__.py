"""Random program generation and differential testing of translations."""

from .generator import GenConfig, generate, generate_many
from .observe import OInj, OOpaque, OPair, OUnit, Observation, observation_json, observe, render_observation
from .corpus import CorpusEntry, corpus, corpus_entry, corpus_for
from .harness import (
    DEFAULT_SOURCE_FUEL,
    CoroutineWatch,
    HygieneWatch,
    InvariantError,
    SuiteReport,
    Verdict,
    VerdictStatus,
    diff_run,
    fuel_policy,
    reproduce,
    run_suite,
)

__all__ = [
    "GenConfig",
    "generate",
    "generate_many",
    "OInj",
    "OOpaque",
    "OPair",
    "OUnit",
    "Observation",
    "observation_json",
    "observe",
    "render_observation",
    "CorpusEntry",
    "corpus",
    "corpus_entry",
    "corpus_for",
    "DEFAULT_SOURCE_FUEL",
    "CoroutineWatch",
    "HygieneWatch",
    "InvariantError",
    "SuiteReport",
    "Verdict",
    "VerdictStatus",
    "diff_run",
    "fuel_policy",
    "reproduce",
    "run_suite",
]
