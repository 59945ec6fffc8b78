"""Calculus membership and program-mode checks."""

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from .ops import Path
from .terms import Calculus, Handle, Hole, Label, Labeled, SCase, Term, Var


class CalculusError(ValueError):
    """A term uses a constructor outside its calculus or is not a program."""

    def __init__(self, violation: "CalculusViolation", calculus: Calculus):
        self.violation = violation
        self.calculus = calculus
        super().__init__(f"{calculus.value}: {violation.reason} at path {list(violation.path)}")


@dataclass(frozen=True)
class CalculusViolation:
    path: Path
    constructor: str
    reason: str


def check_calculus(
    t: Term, calculus: Calculus, require_program: bool = False
) -> Optional[CalculusViolation]:
    """``None`` when ``t`` belongs to ``calculus``, else the first offending subterm.

    In program mode the term must also be closed and free of runtime labels,
    running coroutines and holes.
    """
    return _check(t, Calculus(calculus), require_program, (), frozenset())


def _check(
    t: Term, calculus: Calculus, program: bool, path: Path, bound: FrozenSet[str]
) -> Optional[CalculusViolation]:
    # explicit stack, children pushed in reverse so the first violation is the pre-order one
    stack: List[Tuple[Term, Path, FrozenSet[str]]] = [(t, path, bound)]
    while stack:
        node, where, names = stack.pop()
        found = _violation(node, calculus, program, where, names)
        if found is not None:
            return found
        children = [
            (child, where + (i,), names | frozenset(binders) if binders else names)
            for i, (binders, child) in enumerate(node.scopes())
        ]
        stack.extend(reversed(children))
    return None


def _violation(
    t: Term, calculus: Calculus, program: bool, path: Path, bound: FrozenSet[str]
) -> Optional[CalculusViolation]:
    name = t.constructor
    if calculus not in t.calculi:
        return CalculusViolation(path, name, f"{name} is not a constructor of {calculus.value}")
    if program:
        if isinstance(t, (Label, Labeled)):
            return CalculusViolation(path, name, f"runtime-only form {name} in a program")
        if isinstance(t, Hole):
            return CalculusViolation(path, name, "hole in a program")
        if isinstance(t, Var) and t.name not in bound:
            return CalculusViolation(path, name, f"free variable {t.name}")
    if isinstance(t, (SCase, Handle)):
        keys = t.head()
        if len(set(keys)) != len(keys):
            return CalculusViolation(path, name, f"duplicate clause in {name}")
    return None


def require_calculus(t: Term, calculus: Calculus, require_program: bool = False) -> Term:
    violation = check_calculus(t, calculus, require_program)
    if violation is not None:
        raise CalculusError(violation, Calculus(calculus))
    return t


def is_program(t: Term, calculus: Calculus) -> bool:
    return check_calculus(t, calculus, require_program=True) is None
