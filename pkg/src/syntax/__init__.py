"""Term language shared by all calculi."""

from .terms import (
    ALL_CALCULI,
    LABEL_CLASSES,
    Abs,
    AcLabel,
    App,
    Calculus,
    CaseClause,
    Computation,
    CPair,
    Create,
    DelLabel,
    Dollar,
    EffLabel,
    Force,
    Handle,
    Handler,
    Hole,
    Inj,
    Label,
    Labeled,
    LabelSort,
    OpCall,
    OpClause,
    Pair,
    PCase,
    Prj,
    RefCell,
    RefCreate,
    RefGet,
    RefSet,
    Resume,
    Return,
    SCase,
    Seq,
    Shift0,
    Term,
    Throw,
    Thunk,
    Unit,
    Value,
    Var,
    Yield,
    nat,
    peano_value,
)
from .ops import (
    alpha_equal,
    bound_names,
    free_vars,
    fresh_name,
    labels_in,
    plug,
    rename_free,
    size,
    substitute,
    subterm_at,
    walk,
)
from .calculus import (
    CalculusError,
    CalculusViolation,
    check_calculus,
    is_program,
    require_calculus,
)
from .pretty import pretty

__all__ = [
    "ALL_CALCULI",
    "LABEL_CLASSES",
    "Abs",
    "AcLabel",
    "App",
    "Calculus",
    "CaseClause",
    "Computation",
    "CPair",
    "Create",
    "DelLabel",
    "Dollar",
    "EffLabel",
    "Force",
    "Handle",
    "Handler",
    "Hole",
    "Inj",
    "Label",
    "Labeled",
    "LabelSort",
    "OpCall",
    "OpClause",
    "Pair",
    "PCase",
    "Prj",
    "RefCell",
    "RefCreate",
    "RefGet",
    "RefSet",
    "Resume",
    "Return",
    "SCase",
    "Seq",
    "Shift0",
    "Term",
    "Throw",
    "Thunk",
    "Unit",
    "Value",
    "Var",
    "Yield",
    "nat",
    "peano_value",
    "alpha_equal",
    "bound_names",
    "free_vars",
    "fresh_name",
    "labels_in",
    "plug",
    "rename_free",
    "size",
    "substitute",
    "subterm_at",
    "walk",
    "CalculusError",
    "CalculusViolation",
    "check_calculus",
    "is_program",
    "require_calculus",
    "pretty",
]
