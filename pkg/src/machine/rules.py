"""Beta rules of the five calculi and the single-step function."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from src.syntax import (
    Abs,
    AcLabel,
    App,
    Calculus,
    Computation,
    CPair,
    Create,
    DelLabel,
    Dollar,
    EffLabel,
    Force,
    Handle,
    Hole,
    Inj,
    Label,
    LabelSort,
    Labeled,
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
    Throw,
    Thunk,
    Unit,
    Var,
    fresh_name,
    plug,
    substitute,
)

from .decompose import Decomposition, NoRedex, Terminal, decompose, plug_frames
from .state import (
    BOTTOM,
    NIL,
    BottomState,
    Configuration,
    EntryKind,
    Running,
    Store,
    StoreEntry,
    fresh_label,
)

Delta = Tuple[Tuple[Label, StoreEntry], ...]


@dataclass(frozen=True)
class Transition:
    config: Configuration
    rule: str
    delta: Delta = ()


@dataclass(frozen=True)
class StuckState:
    config: Running
    code: str
    reason: str


StepResult = Union[Transition, Terminal, StuckState]


class _Stuck(Exception):
    def __init__(self, code: str, reason: str):
        super().__init__(reason)
        self.code = code
        self.reason = reason


@dataclass
class _Reduct:
    comp: Optional[Computation]
    store: Store
    rule: str
    delta: Delta = ()

    @property
    def is_bottom(self) -> bool:
        return self.comp is None


def _split_pure(c: Computation) -> Tuple[Computation, Computation]:
    """``(H, head)`` with ``H`` a one-hole pure context and ``c == H[head]``."""
    if isinstance(c, Seq):
        ctx, head = _split_pure(c.first)
        return Seq(c.binder, ctx, c.body), head
    if isinstance(c, App):
        ctx, head = _split_pure(c.fn)
        return App(ctx, c.arg), head
    if isinstance(c, Prj):
        ctx, head = _split_pure(c.body)
        return Prj(c.index, ctx), head
    return Hole(0), c


def _resumption(ctx: Computation, wrap) -> Abs:
    """``λy. wrap(H[return y])``; the hole of a pure context is never under a binder."""
    y = fresh_name("y", ctx.free_names)
    return Abs(y, wrap(plug(ctx, Return(Var(y)))))


def _lookup(store: Store, label: Label) -> StoreEntry:
    entry = store.lookup(label)
    if entry is None:
        raise _Stuck("unknown-label", f"label {label} is not in the store")
    return entry


# ============================================================================
# RULES
# ============================================================================


def _contract(redex: Computation, store: Store, calculus: Calculus) -> _Reduct:
    match redex:
        # MAM
        case PCase(scrutinee, first, second, body):
            if not isinstance(scrutinee, Pair):
                raise _Stuck("pcase-non-pair", "pcase on a value that is not a pair")
            return _Reduct(substitute(body, {first: scrutinee.first, second: scrutinee.second}), store, "pcase")
        case SCase(scrutinee, _):
            if not isinstance(scrutinee, Inj):
                raise _Stuck("case-non-inj", "case on a value that is not an injection")
            clause = redex.clause_for(scrutinee.tag)
            if clause is None:
                raise _Stuck("case-missing-tag", f"no case clause for tag {scrutinee.tag}")
            return _Reduct(substitute(clause.body, {clause.binder: scrutinee.value}), store, "case")
        case Seq(binder, Return(value), body):
            return _Reduct(substitute(body, {binder: value}), store, "let")
        case Force(thunk):
            if not isinstance(thunk, Thunk):
                raise _Stuck("force-non-thunk", "force of a value that is not a thunk")
            return _Reduct(thunk.body, store, "force")
        case App(Abs(binder, body), arg):
            return _Reduct(substitute(body, {binder: arg}), store, "app")
        case Prj(index, CPair(first, second)):
            return _Reduct(first if index == 1 else second, store, "prj")

        # delimited control
        case Dollar(Return(value), binder, ret):
            return _Reduct(substitute(ret, {binder: value}), store, "del.ret")
        case Dollar(body, binder, ret):
            ctx, shift = _split_pure(body)
            label, store = fresh_label(store, LabelSort.DEL)
            cont = _resumption(ctx, lambda c: Dollar(c, binder, ret))
            entry = StoreEntry(EntryKind.DEL_CONT, cont)
            store = store.assign(label, entry)
            return _Reduct(substitute(shift.body, {shift.binder: label}), store, "del.shift", ((label, entry),))
        case Throw(target, arg):
            return _throw(target, arg, store, calculus)

        # coroutines
        case Create(value):
            label, store = fresh_label(store, LabelSort.AC)
            entry = StoreEntry(EntryKind.AC_VAL, value)
            return _Reduct(Return(label), store.assign(label, entry), "ac.create", ((label, entry),))
        case Resume(target, arg):
            if not isinstance(target, AcLabel):
                raise _Stuck("resume-non-label", "resume of a value that is not a coroutine label")
            entry = _lookup(store, target)
            if entry.is_nil:
                return _Reduct(None, store, "ac.fail")
            body = Labeled(target, App(Force(entry.term), arg))
            return _Reduct(body, store.assign(target, NIL), "ac.resume", ((target, NIL),))
        case Labeled(label, Return(value)):
            return _Reduct(Return(value), store, "ac.ret")
        case Labeled(label, body):
            ctx, yielded = _split_pure(body)
            entry = StoreEntry(EntryKind.AC_VAL, Thunk(_resumption(ctx, lambda c: c)))
            return _Reduct(Return(yielded.value), store.assign(label, entry), "ac.yield", ((label, entry),))

        # effect handlers
        case Handle(handler, Return(value)):
            return _Reduct(substitute(handler.ret_body, {handler.ret_binder: value}), store, "eff.ret")
        case Handle(handler, body):
            ctx, call = _split_pure(body)
            clause = handler.clause_for(call.op)
            label, store = fresh_label(store, LabelSort.EFF, handler)
            cont = _resumption(ctx, lambda c: Handle(handler, c))
            entry = StoreEntry(EntryKind.EFF_CONT, cont)
            store = store.assign(label, entry)
            reduct = substitute(clause.body, {clause.param: call.arg, clause.cont: label})
            return _Reduct(reduct, store, "eff.op", ((label, entry),))

        # references
        case RefCreate(value):
            label, store = fresh_label(store, LabelSort.REF)
            entry = StoreEntry(EntryKind.REF_VAL, value)
            return _Reduct(Return(label), store.assign(label, entry), "ref.create", ((label, entry),))
        case RefSet(target, value):
            if not isinstance(target, RefCell):
                raise _Stuck("set-non-ref", "set! on a value that is not a reference")
            _lookup(store, target)
            entry = StoreEntry(EntryKind.REF_VAL, value)
            return _Reduct(Return(Unit()), store.assign(target, entry), "ref.set", ((target, entry),))
        case RefGet(target):
            if not isinstance(target, RefCell):
                raise _Stuck("get-non-ref", "get on a value that is not a reference")
            return _Reduct(Return(_lookup(store, target).term), store, "ref.get")

    raise _Stuck("no-rule", f"no rule applies to {redex.constructor}")


def _throw(target, arg, store: Store, calculus: Calculus) -> _Reduct:
    expected = DelLabel if calculus is Calculus.DEL else EffLabel
    prefix = "del" if calculus is Calculus.DEL else "eff"
    if not isinstance(target, expected):
        raise _Stuck("throw-non-label", "throw to a value that is not a continuation label")
    entry = _lookup(store, target)
    if entry.is_nil:
        return _Reduct(None, store, f"{prefix}.fail")
    cont = entry.term
    reduct = substitute(cont.body, {cont.binder: arg})
    return _Reduct(reduct, store.assign(target, NIL), f"{prefix}.throw", ((target, NIL),))


# ============================================================================
# STEP
# ============================================================================


def step(cfg: Configuration, calculus: Calculus) -> StepResult:
    """One beta step of ``cfg``: a ``Transition``, ``Terminal`` or ``StuckState``."""
    if isinstance(cfg, BottomState):
        raise ValueError("the error state has no successor")
    calculus = Calculus(calculus)
    decomposition = decompose(cfg.comp, calculus)
    if isinstance(decomposition, Terminal):
        return decomposition
    if isinstance(decomposition, NoRedex):
        return StuckState(cfg, decomposition.code, decomposition.reason)
    assert isinstance(decomposition, Decomposition)
    try:
        reduct = _contract(decomposition.redex, cfg.store, calculus)
    except _Stuck as stuck:
        return StuckState(cfg, stuck.code, stuck.reason)
    if reduct.is_bottom:
        return Transition(BOTTOM, reduct.rule)
    comp = plug_frames(decomposition.frames, reduct.comp)
    return Transition(Running(comp, reduct.store), reduct.rule, reduct.delta)
