"""Syntactic abstractions: closed phrases with numbered holes and binder parameters.

A template is written in surface syntax. ``?i`` is the hole filled with the
translation of the i-th child of the translated node, ``$j`` is the j-th binder of
that node. Every other binder belongs to the template and is renamed on
instantiation whenever it would capture a free variable of a filler.
"""

from functools import lru_cache
from typing import Dict, Mapping, Optional

from src.parser import parse_phrase
from src.syntax import Calculus, Hole, Term, Var, bound_names, fresh_name


@lru_cache(maxsize=None)
def template_term(text: str, calculus: Optional[Calculus] = None, sort: str = "computation") -> Term:
    return parse_phrase(text, calculus, sort=sort)


def param(j: int) -> str:
    return f"${j}"


def instantiate(template: Term, fillers: Mapping[int, Term], params: Mapping[str, str]) -> Term:
    avoid = set(params.values())
    for filler in fillers.values():
        avoid |= filler.free_names
    taken = avoid | bound_names(template) | template.free_names

    def go(t: Term, renaming: Dict[str, str]) -> Term:
        if isinstance(t, Hole):
            return fillers.get(t.index, t)
        if isinstance(t, Var):
            return Var(renaming[t.name]) if t.name in renaming else t
        scopes = t.scopes()
        if not scopes:
            return t
        rebuilt = []
        for binders, child in scopes:
            inner = dict(renaming)
            names = []
            for b in binders:
                if b in params:
                    nb = params[b]
                elif b in avoid:
                    nb = fresh_name(b, taken)
                    taken.add(nb)
                else:
                    nb = b
                inner[b] = nb
                names.append(nb)
            rebuilt.append((tuple(names), go(child, inner)))
        return t.rebuild(tuple(rebuilt))

    return go(template, {})
