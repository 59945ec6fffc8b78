"""Runtime invariants: coroutine well-formedness and label hygiene."""

from dataclasses import dataclass
from typing import FrozenSet, Optional

from src.syntax import AcLabel, App, Label, Labeled, LabelSort, Prj, Seq, Term

from .state import BottomState, Configuration


@dataclass(frozen=True)
class Violation:
    label: Label
    clause: str


def active_labels(t: Term) -> FrozenSet[AcLabel]:
    """Labels of running coroutines, i.e. every ``l`` with a ``<l>{...}`` node in ``t``."""
    return t.active_labels


def _first_active(t: Term) -> Optional[AcLabel]:
    if not t.active_labels:
        return None
    return min(t.active_labels, key=lambda lab: lab.id)


def _inactive(t: Term, where: str) -> Optional[Violation]:
    label = _first_active(t)
    if label is None:
        return None
    return Violation(label, f"no active labels in {where}")


def well_formed_computation(m: Term) -> Optional[Violation]:
    """Inductive well-formedness: running coroutines only in evaluation position, never nested in themselves."""
    if not m.active_labels:
        return None
    if isinstance(m, Labeled):
        found = well_formed_computation(m.body)
        if found is not None:
            return found
        if m.label in m.body.active_labels:
            return Violation(m.label, "l ∉ activeLabels(M)")
        return None
    if isinstance(m, Seq):
        return well_formed_computation(m.first) or _inactive(m.body, "let body")
    if isinstance(m, App):
        return well_formed_computation(m.fn) or _inactive(m.arg, "application argument")
    if isinstance(m, Prj):
        return well_formed_computation(m.body)
    for _, child in m.scopes():
        found = _inactive(child, m.constructor)
        if found is not None:
            return found
    return None


def ac_well_formed(cfg: Configuration) -> Optional[Violation]:
    """``None`` when ``cfg`` is well-formed, else the first violated clause."""
    if isinstance(cfg, BottomState):
        return None
    found = well_formed_computation(cfg.comp)
    if found is not None:
        return found
    for label, entry in cfg.store.items():
        if entry.term is not None:
            stored = _first_active(entry.term)
            if stored is not None:
                return Violation(stored, f"stored value of {label} contains an active label")
    for label in sorted(cfg.comp.active_labels, key=lambda lab: lab.id):
        entry = cfg.store.lookup(label)
        if entry is None or not entry.is_nil:
            return Violation(label, "θ(l) = nil for every active l")
    return None


def label_hygiene(cfg: Configuration) -> Optional[Label]:
    """First continuation or reference label in the computation that is not in the store."""
    if isinstance(cfg, BottomState):
        return None
    missing = [
        label
        for label in cfg.comp.labels
        if label.sort is not LabelSort.AC and label not in cfg.store
    ]
    return min(missing, key=lambda lab: (lab.sort.value, lab.id)) if missing else None
