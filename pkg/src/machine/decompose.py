"""Splitting a computation into an evaluation context and a redex."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from src.syntax import (
    Abs,
    AcLabel,
    App,
    Calculus,
    Computation,
    CPair,
    Create,
    Dollar,
    Force,
    Handle,
    Handler,
    Labeled,
    OpCall,
    PCase,
    Prj,
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
    Value,
    Yield,
)


# ============================================================================
# FRAMES
# ============================================================================


@dataclass(frozen=True)
class SeqF:
    binder: str
    body: Computation

    pure = True

    def plug(self, c: Computation) -> Computation:
        return Seq(self.binder, c, self.body)


@dataclass(frozen=True)
class AppF:
    arg: Value

    pure = True

    def plug(self, c: Computation) -> Computation:
        return App(c, self.arg)


@dataclass(frozen=True)
class PrjF:
    index: int

    pure = True

    def plug(self, c: Computation) -> Computation:
        return Prj(self.index, c)


@dataclass(frozen=True)
class DollarF:
    binder: str
    ret: Computation

    pure = False

    def plug(self, c: Computation) -> Computation:
        return Dollar(c, self.binder, self.ret)


@dataclass(frozen=True)
class HandleF:
    handler: Handler

    pure = False

    def plug(self, c: Computation) -> Computation:
        return Handle(self.handler, c)


@dataclass(frozen=True)
class LabeledF:
    label: AcLabel

    pure = False

    def plug(self, c: Computation) -> Computation:
        return Labeled(self.label, c)


Frame = Union[SeqF, AppF, PrjF, DollarF, HandleF, LabeledF]


def plug_frames(frames: Tuple[Frame, ...], c: Computation) -> Computation:
    """Rebuild ``F1[F2[...Fn[c]]]``; ``frames`` lists the outermost frame first."""
    for frame in reversed(frames):
        c = frame.plug(c)
    return c


# ============================================================================
# RESULTS
# ============================================================================


@dataclass(frozen=True)
class Decomposition:
    frames: Tuple[Frame, ...]
    redex: Computation


@dataclass(frozen=True)
class Terminal:
    value: Value


@dataclass(frozen=True)
class NoRedex:
    code: str
    reason: str


DecomposeResult = Union[Decomposition, Terminal, NoRedex]

# constructors whose every occurrence in evaluation position is a redex
ALWAYS_REDEX = (PCase, SCase, Force, Throw, Create, Resume, RefCreate, RefSet, RefGet)


def pure_head(c: Computation) -> Term:
    """Innermost computation reached through sequencing, application and projection frames."""
    while True:
        if isinstance(c, Seq):
            c = c.first
        elif isinstance(c, App):
            c = c.fn
        elif isinstance(c, Prj):
            c = c.body
        else:
            return c


def decompose(c: Computation, calculus: Calculus) -> DecomposeResult:
    frames = []
    while True:
        if calculus not in c.calculi:
            return NoRedex("foreign-constructor", f"{c.constructor} is not a constructor of {calculus.value}")

        if isinstance(c, ALWAYS_REDEX):
            return Decomposition(tuple(frames), c)

        if isinstance(c, Seq):
            if isinstance(c.first, Return):
                return Decomposition(tuple(frames), c)
            frames.append(SeqF(c.binder, c.body))
            c = c.first
        elif isinstance(c, App):
            if isinstance(c.fn, Abs):
                return Decomposition(tuple(frames), c)
            frames.append(AppF(c.arg))
            c = c.fn
        elif isinstance(c, Prj):
            if isinstance(c.body, CPair):
                return Decomposition(tuple(frames), c)
            frames.append(PrjF(c.index))
            c = c.body
        elif isinstance(c, Dollar):
            if isinstance(c.body, Return) or isinstance(pure_head(c.body), Shift0):
                return Decomposition(tuple(frames), c)
            frames.append(DollarF(c.binder, c.ret))
            c = c.body
        elif isinstance(c, Labeled):
            if isinstance(c.body, Return) or isinstance(pure_head(c.body), Yield):
                return Decomposition(tuple(frames), c)
            frames.append(LabeledF(c.label))
            c = c.body
        elif isinstance(c, Handle):
            head = pure_head(c.body)
            if isinstance(c.body, Return) or (
                isinstance(head, OpCall) and c.handler.clause_for(head.op) is not None
            ):
                return Decomposition(tuple(frames), c)
            frames.append(HandleF(c.handler))
            c = c.body
        else:
            return _irreducible(c, tuple(frames))


def _irreducible(c: Term, frames: Tuple[Frame, ...]) -> DecomposeResult:
    if isinstance(c, Return):
        if not frames:
            return Terminal(c.value)
        if isinstance(frames[-1], AppF):
            return NoRedex("return-applied", "a returned value is applied to an argument")
        return NoRedex("return-projected", "a returned value is projected")
    if isinstance(c, Shift0):
        return NoRedex("unbound-shift0", "shift0 without enclosing dollar")
    if isinstance(c, Yield):
        return NoRedex("yield-outside", "yield outside coroutine")
    if isinstance(c, OpCall):
        return NoRedex("unhandled-op", f"unhandled operation {c.op}")
    if isinstance(c, Abs):
        if frames and isinstance(frames[-1], PrjF):
            return NoRedex("abs-projected", "a function is projected")
        if frames and isinstance(frames[-1], SeqF):
            return NoRedex("abs-sequenced", "a function is bound by let")
        return NoRedex("abs-final", "evaluation ends in a function awaiting an argument")
    if isinstance(c, CPair):
        if frames and isinstance(frames[-1], AppF):
            return NoRedex("cpair-applied", "a computation pair is applied to an argument")
        if frames and isinstance(frames[-1], SeqF):
            return NoRedex("cpair-sequenced", "a computation pair is bound by let")
        return NoRedex("cpair-final", "evaluation ends in a computation pair")
    return NoRedex("no-rule", f"no rule applies to {c.constructor}")
