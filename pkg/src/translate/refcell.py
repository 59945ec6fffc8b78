"""Behaviour of the coroutine-encoded reference cell, and reading its state from a store."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from src.machine import Outcome, OutcomeKind, StoreEntry, evaluate
from src.syntax import (
    Abs,
    App,
    Calculus,
    Computation,
    Force,
    Pair,
    Return,
    Seq,
    Term,
    Thunk,
    Unit,
    Value,
    Var,
)

from .helpers import emit_helper


@dataclass(frozen=True)
class CellSet:
    value: Value


@dataclass(frozen=True)
class CellGet:
    pass


CellOp = Union[CellSet, CellGet]


class RefcellCheckError(RuntimeError):
    def __init__(self, outcome: Outcome):
        self.outcome = outcome
        super().__init__(f"refcell program did not return a value: {outcome.describe()}")


def refcell_program(v0: Value, ops: Sequence[CellOp]) -> Computation:
    """``let c = (force ref) v0 in`` the op sequence through get/set, returning the
    list of read values as nested pairs ending in ``()``."""
    get, set_ = emit_helper("get"), emit_helper("set")
    reads = [f"g{i}" for i, op in enumerate(ops) if isinstance(op, CellGet)]
    result: Value = Unit()
    for name in reversed(reads):
        result = Pair(Var(name), result)
    body: Computation = Return(result)
    for i in reversed(range(len(ops))):
        op = ops[i]
        if isinstance(op, CellGet):
            body = Seq(f"g{i}", App(Force(get), Var("c")), body)
        else:
            body = Seq(f"s{i}", App(App(Force(set_), Var("c")), op.value), body)
    return Seq("c", App(Force(emit_helper("ref")), v0), body)


def refcell_behaviour_check(v0: Value, ops: Sequence[CellOp], fuel: int = 100_000) -> List[Value]:
    """Values read by the ``Get`` operations when run on the encoded cell."""
    outcome = evaluate(refcell_program(v0, ops), Calculus.AC, fuel)
    if outcome.kind is not OutcomeKind.VALUE:
        raise RefcellCheckError(outcome)
    reads: List[Value] = []
    value = outcome.value
    while isinstance(value, Pair):
        reads.append(value.first)
        value = value.second
    return reads


def reference_cell(v0: Value, ops: Sequence[CellOp]) -> List[Value]:
    """Last-write-wins oracle."""
    state, reads = v0, []
    for op in ops:
        if isinstance(op, CellSet):
            state = op.value
        else:
            reads.append(state)
    return reads


def refcell_state(entry: Union[StoreEntry, Term, None]) -> Optional[Value]:
    """State held by a suspended refcell coroutine, read off its stored thunk.

    Both the initial cell and every resumption after a yield have the shape
    ``{λy. let q' = return y in ((force f) s) q'}``; ``s`` is the state. Returns
    ``None`` for a running (nil) cell or anything of another shape.
    """
    term = entry.term if isinstance(entry, StoreEntry) else entry
    match term:
        case Thunk(Abs(_, Seq(_, Return(_), App(App(_, state), _)))):
            return state
    return None
