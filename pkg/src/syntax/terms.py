"""Unified AST of values and computations for all five calculi.

Every constructor describes its binding structure through ``scopes()``: a tuple
of ``(binders, child)`` pairs listing the immediate subterms together with the
names bound in each of them. ``rebuild(scopes)`` is the inverse and returns a node
of the same shape with new binders and children. Substitution, alpha-equivalence,
calculus checks, translations and the generator are all written against this
pair instead of matching every constructor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import ClassVar, FrozenSet, NamedTuple, Optional, Tuple


class Calculus(str, Enum):
    MAM = "mam"
    DEL = "del"
    AC = "ac"
    EFF = "eff"
    REF = "ref"


class LabelSort(str, Enum):
    DEL = "d"
    AC = "c"
    EFF = "e"
    REF = "r"


ALL_CALCULI: FrozenSet[Calculus] = frozenset(Calculus)

Scope = Tuple[Tuple[str, ...], "Term"]


# ============================================================================
# BASE CLASSES
# ============================================================================


@dataclass(frozen=True)
class Term:
    calculi: ClassVar[FrozenSet[Calculus]] = ALL_CALCULI

    def scopes(self) -> Tuple[Scope, ...]:
        return ()

    def rebuild(self, scopes: Tuple[Scope, ...]) -> "Term":
        return self

    def head(self) -> tuple:
        """Non-term data that identifies the constructor instance (tags, op names, ids)."""
        return ()

    def canonical(self) -> "Term":
        """Same term with order-irrelevant clause lists sorted."""
        return self

    @property
    def constructor(self) -> str:
        return type(self).__name__

    @cached_property
    def free_names(self) -> FrozenSet[str]:
        _fill_below(self, "free_names")
        names = set()
        for binders, child in self.scopes():
            names |= child.free_names - set(binders)
        return frozenset(names)

    @cached_property
    def has_holes(self) -> bool:
        _fill_below(self, "has_holes")
        return any(child.has_holes for _, child in self.scopes())

    @cached_property
    def labels(self) -> FrozenSet["Label"]:
        _fill_below(self, "labels")
        return frozenset().union(*(child.labels for _, child in self.scopes()))

    @cached_property
    def active_labels(self) -> FrozenSet["AcLabel"]:
        """Labels ``l`` with a running coroutine ``<l>{...}`` somewhere in the term."""
        _fill_below(self, "active_labels")
        return frozenset().union(*(child.active_labels for _, child in self.scopes()))


def _fill_below(t: Term, attr: str) -> None:
    """Compute the cached ``attr`` of every proper subterm of ``t``, children first.

    Afterwards each node's own computation only reads its direct children, so
    deep chains such as Peano numerals never nest Python calls.
    """
    stack = [(child, False) for _, child in t.scopes()]
    while stack:
        node, ready = stack.pop()
        if attr in node.__dict__:
            continue
        if ready:
            getattr(node, attr)
        else:
            stack.append((node, True))
            stack.extend((child, False) for _, child in node.scopes())


@dataclass(frozen=True)
class Value(Term):
    pass


@dataclass(frozen=True)
class Computation(Term):
    pass


# ============================================================================
# VALUES
# ============================================================================


@dataclass(frozen=True)
class Var(Value):
    name: str

    def head(self) -> tuple:
        return (self.name,)

    @cached_property
    def free_names(self) -> FrozenSet[str]:
        return frozenset((self.name,))


@dataclass(frozen=True)
class Unit(Value):
    pass


@dataclass(frozen=True)
class Pair(Value):
    first: Value
    second: Value

    def scopes(self):
        return (((), self.first), ((), self.second))

    def rebuild(self, scopes):
        return Pair(scopes[0][1], scopes[1][1])


@dataclass(frozen=True)
class Inj(Value):
    tag: str
    value: Value

    def scopes(self):
        return (((), self.value),)

    def rebuild(self, scopes):
        return Inj(self.tag, scopes[0][1])

    def head(self):
        return (self.tag,)


@dataclass(frozen=True)
class Thunk(Value):
    body: Computation

    def scopes(self):
        return (((), self.body),)

    def rebuild(self, scopes):
        return Thunk(scopes[0][1])


@dataclass(frozen=True)
class Label(Value):
    """Runtime label. Ids are allocated per sort, so sorts never share an id space."""

    id: int
    sort: ClassVar[LabelSort]

    @cached_property
    def labels(self) -> FrozenSet["Label"]:
        return frozenset((self,))

    def head(self):
        return (self.id,)

    def __str__(self) -> str:
        return f"#{self.sort.value}{self.id}"


@dataclass(frozen=True)
class DelLabel(Label):
    calculi = frozenset({Calculus.DEL})
    sort = LabelSort.DEL


@dataclass(frozen=True)
class AcLabel(Label):
    calculi = frozenset({Calculus.AC})
    sort = LabelSort.AC


@dataclass(frozen=True)
class EffLabel(Label):
    calculi = frozenset({Calculus.EFF})
    sort = LabelSort.EFF
    # identity is the id alone
    handler: Optional["Handler"] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class RefCell(Label):
    calculi = frozenset({Calculus.REF})
    sort = LabelSort.REF


LABEL_CLASSES = {cls.sort: cls for cls in (DelLabel, AcLabel, EffLabel, RefCell)}


@dataclass(frozen=True)
class Hole(Value, Computation):
    """Numbered hole of a context or syntactic abstraction; stands for either sort."""

    index: int = 0

    def head(self):
        return (self.index,)

    @cached_property
    def has_holes(self) -> bool:
        return True


# ============================================================================
# COMPUTATIONS: CORE
# ============================================================================


class CaseClause(NamedTuple):
    tag: str
    binder: str
    body: Computation


@dataclass(frozen=True)
class PCase(Computation):
    scrutinee: Value
    first: str
    second: str
    body: Computation

    def scopes(self):
        return (((), self.scrutinee), ((self.first, self.second), self.body))

    def rebuild(self, scopes):
        (_, scrutinee), ((first, second), body) = scopes
        return PCase(scrutinee, first, second, body)


@dataclass(frozen=True)
class SCase(Computation):
    scrutinee: Value
    clauses: Tuple[CaseClause, ...]

    def scopes(self):
        return (((), self.scrutinee),) + tuple(((c.binder,), c.body) for c in self.clauses)

    def rebuild(self, scopes):
        clauses = tuple(
            CaseClause(c.tag, binders[0], body)
            for c, (binders, body) in zip(self.clauses, scopes[1:])
        )
        return SCase(scopes[0][1], clauses)

    def head(self):
        return tuple(c.tag for c in self.clauses)

    def canonical(self):
        ordered = tuple(sorted(self.clauses, key=lambda c: c.tag))
        return self if ordered == self.clauses else SCase(self.scrutinee, ordered)

    def clause_for(self, tag: str) -> Optional[CaseClause]:
        return next((c for c in self.clauses if c.tag == tag), None)


@dataclass(frozen=True)
class Force(Computation):
    thunk: Value

    def scopes(self):
        return (((), self.thunk),)

    def rebuild(self, scopes):
        return Force(scopes[0][1])


@dataclass(frozen=True)
class Return(Computation):
    value: Value

    def scopes(self):
        return (((), self.value),)

    def rebuild(self, scopes):
        return Return(scopes[0][1])


@dataclass(frozen=True)
class Seq(Computation):
    """``let binder = first in body``"""

    binder: str
    first: Computation
    body: Computation

    def scopes(self):
        return (((), self.first), ((self.binder,), self.body))

    def rebuild(self, scopes):
        (_, first), ((binder,), body) = scopes
        return Seq(binder, first, body)


@dataclass(frozen=True)
class Abs(Computation):
    binder: str
    body: Computation

    def scopes(self):
        return (((self.binder,), self.body),)

    def rebuild(self, scopes):
        ((binder,), body), = scopes
        return Abs(binder, body)


@dataclass(frozen=True)
class App(Computation):
    fn: Computation
    arg: Value

    def scopes(self):
        return (((), self.fn), ((), self.arg))

    def rebuild(self, scopes):
        return App(scopes[0][1], scopes[1][1])


@dataclass(frozen=True)
class CPair(Computation):
    first: Computation
    second: Computation

    def scopes(self):
        return (((), self.first), ((), self.second))

    def rebuild(self, scopes):
        return CPair(scopes[0][1], scopes[1][1])


@dataclass(frozen=True)
class Prj(Computation):
    index: int
    body: Computation

    def scopes(self):
        return (((), self.body),)

    def rebuild(self, scopes):
        return Prj(self.index, scopes[0][1])

    def head(self):
        return (self.index,)


# ============================================================================
# COMPUTATIONS: DELIMITED CONTROL
# ============================================================================


@dataclass(frozen=True)
class Shift0(Computation):
    calculi = frozenset({Calculus.DEL})
    binder: str
    body: Computation

    def scopes(self):
        return (((self.binder,), self.body),)

    def rebuild(self, scopes):
        ((binder,), body), = scopes
        return Shift0(binder, body)


@dataclass(frozen=True)
class Dollar(Computation):
    """Delimiter: runs ``body``; a returned value is bound to ``binder`` in ``ret``."""

    calculi = frozenset({Calculus.DEL})
    body: Computation
    binder: str
    ret: Computation

    def scopes(self):
        return (((), self.body), ((self.binder,), self.ret))

    def rebuild(self, scopes):
        (_, body), ((binder,), ret) = scopes
        return Dollar(body, binder, ret)


@dataclass(frozen=True)
class Throw(Computation):
    calculi = frozenset({Calculus.DEL, Calculus.EFF})
    target: Value
    arg: Value

    def scopes(self):
        return (((), self.target), ((), self.arg))

    def rebuild(self, scopes):
        return Throw(scopes[0][1], scopes[1][1])


# ============================================================================
# COMPUTATIONS: ASYMMETRIC COROUTINES
# ============================================================================


@dataclass(frozen=True)
class Create(Computation):
    calculi = frozenset({Calculus.AC})
    value: Value

    def scopes(self):
        return (((), self.value),)

    def rebuild(self, scopes):
        return Create(scopes[0][1])


@dataclass(frozen=True)
class Resume(Computation):
    calculi = frozenset({Calculus.AC})
    target: Value
    arg: Value

    def scopes(self):
        return (((), self.target), ((), self.arg))

    def rebuild(self, scopes):
        return Resume(scopes[0][1], scopes[1][1])


@dataclass(frozen=True)
class Yield(Computation):
    calculi = frozenset({Calculus.AC})
    value: Value

    def scopes(self):
        return (((), self.value),)

    def rebuild(self, scopes):
        return Yield(scopes[0][1])


@dataclass(frozen=True)
class Labeled(Computation):
    """A running coroutine; only ever produced by the machine."""

    calculi = frozenset({Calculus.AC})
    label: AcLabel
    body: Computation

    def scopes(self):
        return (((), self.body),)

    def rebuild(self, scopes):
        return Labeled(self.label, scopes[0][1])

    def head(self):
        return (self.label.id,)

    @cached_property
    def active_labels(self) -> FrozenSet[AcLabel]:
        _fill_below(self, "active_labels")
        return self.body.active_labels | {self.label}


# ============================================================================
# COMPUTATIONS: EFFECT HANDLERS
# ============================================================================


class OpClause(NamedTuple):
    op: str
    param: str
    cont: str
    body: Computation


@dataclass(frozen=True)
class Handler:
    ret_binder: str
    ret_body: Computation
    clauses: Tuple[OpClause, ...] = ()

    @property
    def ops(self) -> Tuple[str, ...]:
        return tuple(c.op for c in self.clauses)

    def clause_for(self, op: str) -> Optional[OpClause]:
        return next((c for c in self.clauses if c.op == op), None)


@dataclass(frozen=True)
class OpCall(Computation):
    calculi = frozenset({Calculus.EFF})
    op: str
    arg: Value

    def scopes(self):
        return (((), self.arg),)

    def rebuild(self, scopes):
        return OpCall(self.op, scopes[0][1])

    def head(self):
        return (self.op,)


@dataclass(frozen=True)
class Handle(Computation):
    calculi = frozenset({Calculus.EFF})
    handler: Handler
    body: Computation

    def scopes(self):
        h = self.handler
        return (
            ((), self.body),
            ((h.ret_binder,), h.ret_body),
        ) + tuple(((c.param, c.cont), c.body) for c in h.clauses)

    def rebuild(self, scopes):
        (_, body), ((ret_binder,), ret_body), *rest = scopes
        clauses = tuple(
            OpClause(c.op, binders[0], binders[1], clause_body)
            for c, (binders, clause_body) in zip(self.handler.clauses, rest)
        )
        return Handle(Handler(ret_binder, ret_body, clauses), body)

    def head(self):
        return self.handler.ops

    def canonical(self):
        h = self.handler
        ordered = tuple(sorted(h.clauses, key=lambda c: c.op))
        if ordered == h.clauses:
            return self
        return Handle(Handler(h.ret_binder, h.ret_body, ordered), self.body)


# ============================================================================
# COMPUTATIONS: REFERENCES
# ============================================================================


@dataclass(frozen=True)
class RefCreate(Computation):
    calculi = frozenset({Calculus.REF})
    value: Value

    def scopes(self):
        return (((), self.value),)

    def rebuild(self, scopes):
        return RefCreate(scopes[0][1])


@dataclass(frozen=True)
class RefSet(Computation):
    calculi = frozenset({Calculus.REF})
    target: Value
    value: Value

    def scopes(self):
        return (((), self.target), ((), self.value))

    def rebuild(self, scopes):
        return RefSet(scopes[0][1], scopes[1][1])


@dataclass(frozen=True)
class RefGet(Computation):
    calculi = frozenset({Calculus.REF})
    target: Value

    def scopes(self):
        return (((), self.target),)

    def rebuild(self, scopes):
        return RefGet(scopes[0][1])


# ============================================================================
# PEANO NUMERALS
# ============================================================================

ZERO_TAG = "Zero"
SUCC_TAG = "Succ"


def nat(n: int) -> Value:
    """Peano numeral ``inj_Succ (... inj_Zero ())``."""
    if n < 0:
        raise ValueError(f"Peano numerals are non-negative, got {n}")
    value: Value = Inj(ZERO_TAG, Unit())
    for _ in range(n):
        value = Inj(SUCC_TAG, value)
    return value


def peano_value(v: Term) -> Optional[int]:
    count = 0
    while isinstance(v, Inj) and v.tag == SUCC_TAG:
        count += 1
        v = v.value
    if isinstance(v, Inj) and v.tag == ZERO_TAG and isinstance(v.value, Unit):
        return count
    return None
