"""Translation ids and lookup."""

from enum import Enum
from functools import lru_cache
from typing import Optional, Tuple

from src.syntax import Calculus, Term

from .base import ComposedTranslation, Translation, TranslationError
from .del_to_ac import CounterDelToAc, NaiveDelToAc
from .del_to_eff import DelToEff
from .eff_to_del import EffToDel
from .ref_to_ac import RefToAc


class TranslationId(str, Enum):
    DEL_TO_AC_NAIVE = "del_to_ac_naive"
    DEL_TO_AC_COUNTER = "del_to_ac_counter"
    EFF_TO_DEL = "eff_to_del"
    DEL_TO_EFF = "del_to_eff"
    REF_TO_AC = "ref_to_ac"
    EFF_TO_AC = "eff_to_ac"


@lru_cache(maxsize=None)
def get_translation(translation_id: TranslationId) -> Translation:
    tid = TranslationId(translation_id)
    if tid is TranslationId.DEL_TO_AC_NAIVE:
        return NaiveDelToAc()
    if tid is TranslationId.DEL_TO_AC_COUNTER:
        return CounterDelToAc()
    if tid is TranslationId.EFF_TO_DEL:
        return EffToDel()
    if tid is TranslationId.DEL_TO_EFF:
        return DelToEff()
    if tid is TranslationId.REF_TO_AC:
        return RefToAc()
    return ComposedTranslation(
        tid.value,
        get_translation(TranslationId.EFF_TO_DEL),
        get_translation(TranslationId.DEL_TO_AC_COUNTER),
    )


def endpoints(translation_id: TranslationId) -> Tuple[Calculus, Calculus]:
    translation = get_translation(translation_id)
    return translation.source, translation.target


def resolve(source: Calculus, target: Calculus, variant: Optional[str] = None) -> TranslationId:
    """Translation id for a calculus pair; ``variant`` picks naive or counter for del to ac."""
    source, target = Calculus(source), Calculus(target)
    if (source, target) == (Calculus.DEL, Calculus.AC):
        variant = variant or "counter"
        if variant not in ("naive", "counter"):
            raise TranslationError(f"unknown variant {variant!r} for del to ac (naive or counter)")
        return TranslationId(f"del_to_ac_{variant}")
    if variant is not None:
        raise TranslationError(f"{source.value} to {target.value} has a single variant")
    for tid in TranslationId:
        if endpoints(tid) == (source, target):
            return tid
    raise TranslationError(f"no translation from {source.value} to {target.value}")


def translate(program: Term, translation_id: TranslationId) -> Term:
    """Translate a label-free source program."""
    return get_translation(translation_id).translate(program)


def translate_phrase(t: Term, translation_id: TranslationId) -> Term:
    """Translate an open phrase or context without program checks."""
    return get_translation(translation_id).phrase(t)
