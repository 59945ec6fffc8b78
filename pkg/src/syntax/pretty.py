"""Canonical s-expression rendering of terms."""

from typing import List, Union

from .terms import (
    Abs,
    App,
    CPair,
    Create,
    Dollar,
    Force,
    Handle,
    Hole,
    Inj,
    Label,
    Labeled,
    OpCall,
    Pair,
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
    Thunk,
    Unit,
    Var,
    Yield,
    peano_value,
)


def pretty(t: Term, fold_numerals: bool = False) -> str:
    """Single-line surface syntax; ``fold_numerals`` prints Peano literals as ``(nat n)``."""
    out: List[str] = []
    stack: List[Union[Term, str]] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, Term):
            stack.extend(reversed(_pieces(item, fold_numerals)))
        else:
            out.append(item)
    return "".join(out)


def _form(*items) -> list:
    pieces: list = ["("]
    for i, item in enumerate(items):
        if i:
            pieces.append(" ")
        pieces.append(item if isinstance(item, Term) else str(item))
    pieces.append(")")
    return pieces


def _pieces(t: Term, fold: bool) -> list:
    """Text fragments and subterms, in output order, making up one node."""
    if fold and isinstance(t, Inj):
        n = peano_value(t)
        if n is not None:
            return [f"(nat {n})"]

    match t:
        case Hole(index):
            return [f"?{index}"]
        case Var(name):
            return [name]
        case Unit():
            return ["()"]
        case Label():
            return [str(t)]
        case Pair(first, second):
            return _form("pair", first, second)
        case Inj(tag, value):
            return _form("inj", tag, value)
        case Thunk(body):
            return _form("thunk", body)
        case PCase(scrutinee, first, second, body):
            return ["(pcase ", scrutinee, f" ({first} {second}) ", body, ")"]
        case SCase(scrutinee, clauses):
            pieces = ["(case ", scrutinee]
            for clause in clauses:
                pieces.append(" ")
                pieces.extend(_form(clause.tag, clause.binder, clause.body))
            pieces.append(")")
            return pieces
        case Force(thunk):
            return _form("force", thunk)
        case Return(value):
            return _form("return", value)
        case Seq(binder, first, body):
            return _form("let", binder, first, body)
        case Abs(binder, body):
            return _form("lam", binder, body)
        case App(fn, arg):
            return _form("app", fn, arg)
        case CPair(first, second):
            return _form("cpair", first, second)
        case Prj(index, body):
            return _form("prj", index, body)
        case Shift0(binder, body):
            return _form("shift0", binder, body)
        case Dollar(body, binder, ret):
            return _form("dollar", body, binder, ret)
        case Throw(target, arg):
            return _form("throw", target, arg)
        case Create(value):
            return _form("create", value)
        case Resume(target, arg):
            return _form("resume", target, arg)
        case Yield(value):
            return _form("yield", value)
        case Labeled(label, body):
            return _form("labeled", label, body)
        case OpCall(op, arg):
            return _form("op", op, arg)
        case Handle(handler, body):
            pieces = ["(handle (handler "]
            pieces.extend(_form("ret", handler.ret_binder, handler.ret_body))
            for clause in handler.clauses:
                pieces.append(" ")
                pieces.extend(_form("on", clause.op, clause.param, clause.cont, clause.body))
            pieces.extend([") ", body, ")"])
            return pieces
        case RefCreate(value):
            return _form("ref", value)
        case RefSet(target, value):
            return _form("set!", target, value)
        case RefGet(target):
            return _form("get", target)
        case _:
            raise TypeError(f"Cannot render {t!r}")
