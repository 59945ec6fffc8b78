"""Observations: the comparable part of a final value.

Thunks and labels are opaque; unit, pairs and injections are compared structurally.
"""

from dataclasses import dataclass
from typing import Any, Union

from src.syntax import Inj, Pair, Unit, Value


@dataclass(frozen=True)
class OUnit:
    pass


@dataclass(frozen=True)
class OPair:
    first: "Observation"
    second: "Observation"


@dataclass(frozen=True)
class OInj:
    tag: str
    value: "Observation"


@dataclass(frozen=True)
class OOpaque:
    pass


Observation = Union[OUnit, OPair, OInj, OOpaque]


def observe(v: Value) -> Observation:
    if isinstance(v, Unit):
        return OUnit()
    if isinstance(v, Pair):
        return OPair(observe(v.first), observe(v.second))
    if isinstance(v, Inj):
        return OInj(v.tag, observe(v.value))
    return OOpaque()


def observation_json(o: Observation) -> Any:
    """``"()"``, ``["pair", a, b]``, ``["inj", tag, o]`` or ``"opaque"``."""
    if isinstance(o, OUnit):
        return "()"
    if isinstance(o, OPair):
        return ["pair", observation_json(o.first), observation_json(o.second)]
    if isinstance(o, OInj):
        return ["inj", o.tag, observation_json(o.value)]
    return "opaque"


def render_observation(o: Observation) -> str:
    if isinstance(o, OUnit):
        return "()"
    if isinstance(o, OPair):
        return f"(pair {render_observation(o.first)} {render_observation(o.second)})"
    if isinstance(o, OInj):
        return f"(inj {o.tag} {render_observation(o.value)})"
    return "<opaque>"
