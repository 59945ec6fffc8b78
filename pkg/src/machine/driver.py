"""Fuel-bounded evaluation, outcome classification and trace export."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

from src.config import get_fuel, get_trace_cap
from src.logger import log_debug
from src.syntax import Calculus, CalculusError, Term, Value, pretty, require_calculus

from .decompose import Terminal
from .rules import Delta, StuckState, Transition, step
from .state import EMPTY_STORE, BottomState, Configuration, Running, Store


class EvaluationError(ValueError):
    """The input is not a program of the requested calculus."""


class OutcomeKind(str, Enum):
    VALUE = "value"
    BOTTOM = "bottom"
    STUCK = "stuck"
    FUEL_EXHAUSTED = "fuel_exhausted"


@dataclass(frozen=True)
class TraceEntry:
    index: int
    rule: str
    config: Configuration
    delta: Delta = ()

    def to_record(self) -> Dict[str, Any]:
        return {
            "step": self.index,
            "rule": self.rule,
            "computation": self.config.describe(),
            "store_delta": {str(label): entry.describe() for label, entry in self.delta},
        }


@dataclass
class Outcome:
    kind: OutcomeKind
    steps: int
    config: Configuration
    value: Optional[Value] = None
    reason: Optional[str] = None
    trace: Optional[List[TraceEntry]] = None
    trace_truncated: bool = False

    @property
    def store(self) -> Optional[Store]:
        return self.config.store if isinstance(self.config, Running) else None

    @property
    def is_value(self) -> bool:
        return self.kind is OutcomeKind.VALUE

    def describe(self) -> str:
        if self.kind is OutcomeKind.VALUE:
            return pretty(self.value)
        if self.kind is OutcomeKind.STUCK:
            return f"stuck: {self.reason}"
        return self.kind.value


Observer = Callable[[TraceEntry], None]


def evaluate(
    program: Term,
    calculus: Calculus,
    fuel: Optional[int] = None,
    want_trace: bool = False,
    trace_cap: Optional[int] = None,
    observer: Optional[Observer] = None,
) -> Outcome:
    """Run ``program`` from the empty store for at most ``fuel`` beta steps.

    ``observer`` sees every configuration of the run, including the initial
    one, whether or not a trace is kept.
    """
    calculus = Calculus(calculus)
    try:
        require_calculus(program, calculus, require_program=True)
    except CalculusError as exc:
        raise EvaluationError(str(exc)) from exc
    fuel = get_fuel() if fuel is None else fuel
    cap = get_trace_cap() if trace_cap is None else trace_cap

    cfg: Configuration = Running(program, EMPTY_STORE)
    trace: Optional[List[TraceEntry]] = [] if want_trace else None
    truncated = False
    steps = 0

    def record(entry: TraceEntry) -> None:
        nonlocal truncated
        if observer is not None:
            observer(entry)
        if trace is not None:
            if len(trace) < cap:
                trace.append(entry)
            else:
                truncated = True

    def finish(kind: OutcomeKind, **extra) -> Outcome:
        return Outcome(kind, steps, cfg, trace=trace, trace_truncated=truncated, **extra)

    record(TraceEntry(0, "init", cfg))
    while True:
        result = step(cfg, calculus)
        if isinstance(result, Terminal):
            return finish(OutcomeKind.VALUE, value=result.value)
        if isinstance(result, StuckState):
            return finish(OutcomeKind.STUCK, reason=result.reason)
        if steps >= fuel:
            return finish(OutcomeKind.FUEL_EXHAUSTED)
        assert isinstance(result, Transition)
        steps += 1
        cfg = result.config
        if trace is not None:
            log_debug(f"step {steps}: {result.rule}")
        record(TraceEntry(steps, result.rule, cfg, result.delta))
        if isinstance(cfg, BottomState):
            return finish(OutcomeKind.BOTTOM)


def trace_records(outcome: Outcome) -> List[Dict[str, Any]]:
    """Line-delimited trace export: step index, rule, computation, store delta."""
    return [entry.to_record() for entry in outcome.trace or ()]


def outcome_record(outcome: Outcome) -> Dict[str, Any]:
    record: Dict[str, Any] = {"outcome": outcome.kind.value, "steps": outcome.steps}
    if outcome.reason is not None:
        record["reason"] = outcome.reason
    return record
