"""Macro-translations between the calculi."""

from .base import ComposedTranslation, Translation, TranslationError
from .conditions import (
    ConditionViolation,
    MacroReport,
    abstract_node,
    check_macro_conditions,
    is_pure_context,
    maps_frames_to_frames,
)
from .helpers import HELPERS, HelperError, emit_helper
from .refcell import (
    CellGet,
    CellSet,
    RefcellCheckError,
    refcell_behaviour_check,
    refcell_program,
    refcell_state,
    reference_cell,
)
from .registry import (
    TranslationId,
    endpoints,
    get_translation,
    resolve,
    translate,
    translate_phrase,
)
from .template import instantiate, template_term

__all__ = [
    "ComposedTranslation",
    "Translation",
    "TranslationError",
    "ConditionViolation",
    "MacroReport",
    "abstract_node",
    "check_macro_conditions",
    "is_pure_context",
    "maps_frames_to_frames",
    "HELPERS",
    "HelperError",
    "emit_helper",
    "CellGet",
    "CellSet",
    "RefcellCheckError",
    "refcell_behaviour_check",
    "refcell_program",
    "refcell_state",
    "reference_cell",
    "TranslationId",
    "endpoints",
    "get_translation",
    "resolve",
    "translate",
    "translate_phrase",
    "instantiate",
    "template_term",
]
