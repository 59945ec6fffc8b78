"""Small-step machine for the five calculi."""

from .state import (
    BOTTOM,
    EMPTY_STORE,
    NIL,
    BottomState,
    Configuration,
    EntryKind,
    Running,
    Store,
    StoreEntry,
    fresh_label,
)
from .decompose import (
    AppF,
    Decomposition,
    DollarF,
    HandleF,
    LabeledF,
    NoRedex,
    PrjF,
    SeqF,
    Terminal,
    decompose,
    plug_frames,
)
from .rules import StuckState, Transition, step
from .driver import (
    EvaluationError,
    Outcome,
    OutcomeKind,
    TraceEntry,
    evaluate,
    outcome_record,
    trace_records,
)
from .wellformed import Violation, ac_well_formed, active_labels, label_hygiene
from .forwarding import forward_ops, operations_in

__all__ = [
    "BOTTOM",
    "EMPTY_STORE",
    "NIL",
    "BottomState",
    "Configuration",
    "EntryKind",
    "Running",
    "Store",
    "StoreEntry",
    "fresh_label",
    "AppF",
    "Decomposition",
    "DollarF",
    "HandleF",
    "LabeledF",
    "NoRedex",
    "PrjF",
    "SeqF",
    "Terminal",
    "decompose",
    "plug_frames",
    "StuckState",
    "Transition",
    "step",
    "EvaluationError",
    "Outcome",
    "OutcomeKind",
    "TraceEntry",
    "evaluate",
    "outcome_record",
    "trace_records",
    "Violation",
    "ac_well_formed",
    "active_labels",
    "label_hygiene",
    "forward_ops",
    "operations_in",
]
