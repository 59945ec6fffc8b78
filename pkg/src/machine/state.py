"""Stores and configurations."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterator, Mapping, Optional, Tuple, Union

from src.syntax import LABEL_CLASSES, Handler, Label, LabelSort, Term, pretty


class EntryKind(str, Enum):
    NIL = "nil"
    DEL_CONT = "del_cont"
    EFF_CONT = "eff_cont"
    AC_VAL = "ac_val"
    REF_VAL = "ref_val"


# which non-nil entry each label sort holds
ENTRY_FOR_SORT = {
    LabelSort.DEL: EntryKind.DEL_CONT,
    LabelSort.EFF: EntryKind.EFF_CONT,
    LabelSort.AC: EntryKind.AC_VAL,
    LabelSort.REF: EntryKind.REF_VAL,
}


@dataclass(frozen=True)
class StoreEntry:
    kind: EntryKind
    term: Optional[Term] = None

    @property
    def is_nil(self) -> bool:
        return self.kind is EntryKind.NIL

    def describe(self) -> str:
        return "nil" if self.is_nil else pretty(self.term, fold_numerals=True)


NIL = StoreEntry(EntryKind.NIL)


@dataclass(frozen=True)
class Store:
    """Finite partial map from labels to entries. ``NIL`` is a present entry."""

    entries: Mapping[Label, StoreEntry] = field(default_factory=dict)
    next_ids: Mapping[LabelSort, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))
        object.__setattr__(self, "next_ids", MappingProxyType(dict(self.next_ids)))

    def __contains__(self, label: Label) -> bool:
        return label in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.entries)

    def lookup(self, label: Label) -> Optional[StoreEntry]:
        """Entry for ``label``; ``None`` means the label is not in the domain."""
        return self.entries.get(label)

    def items(self):
        return self.entries.items()

    def next_id(self, sort: LabelSort) -> int:
        return self.next_ids.get(sort, 0)

    def assign(self, label: Label, entry: StoreEntry) -> "Store":
        if not entry.is_nil and ENTRY_FOR_SORT[label.sort] is not entry.kind:
            raise ValueError(f"{entry.kind.value} entry cannot be stored under {label}")
        if entry.is_nil and label.sort is LabelSort.REF:
            raise ValueError("reference cells are never nil")
        entries = dict(self.entries)
        entries[label] = entry
        next_ids = dict(self.next_ids)
        next_ids[label.sort] = max(self.next_id(label.sort), label.id + 1)
        return Store(entries, next_ids)

    def __getstate__(self):
        return {"entries": dict(self.entries), "next_ids": dict(self.next_ids)}

    def __setstate__(self, state):
        object.__setattr__(self, "entries", MappingProxyType(state["entries"]))
        object.__setattr__(self, "next_ids", MappingProxyType(state["next_ids"]))


EMPTY_STORE = Store()


def fresh_label(
    store: Store, sort: LabelSort, handler: Optional[Handler] = None
) -> Tuple[Label, Store]:
    """Label with the next unused id of ``sort`` and the store with that id reserved."""
    ident = store.next_id(sort)
    cls = LABEL_CLASSES[sort]
    label = cls(ident, handler) if sort is LabelSort.EFF else cls(ident)
    next_ids = dict(store.next_ids)
    next_ids[sort] = ident + 1
    return label, Store(store.entries, next_ids)


# ============================================================================
# CONFIGURATIONS
# ============================================================================


@dataclass(frozen=True)
class Running:
    comp: Term
    store: Store = EMPTY_STORE

    def describe(self) -> str:
        return pretty(self.comp, fold_numerals=True)


@dataclass(frozen=True)
class BottomState:
    """The error state reached by invoking a consumed continuation or coroutine."""

    def describe(self) -> str:
        return "⊥"


BOTTOM = BottomState()

Configuration = Union[Running, BottomState]
