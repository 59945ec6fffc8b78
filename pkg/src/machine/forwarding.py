"""Total handlers by forwarding unhandled operations outward."""

from typing import Set

from src.syntax import Handle, Handler, OpCall, OpClause, Seq, Term, Throw, Var, walk


def operations_in(t: Term) -> Set[str]:
    return {node.op for _, node in walk(t) if isinstance(node, OpCall)}


def forward_ops(program: Term) -> Term:
    """Give every handler a clause ``op p k ↦ let r = op p in throw k r`` for each
    operation of the program it does not handle."""
    ops = sorted(operations_in(program))
    if not ops:
        return program
    return _forward(program, ops)


def _forward(t: Term, ops) -> Term:
    rebuilt = t.rebuild(tuple((binders, _forward(child, ops)) for binders, child in t.scopes()))
    if not isinstance(rebuilt, Handle):
        return rebuilt
    handler = rebuilt.handler
    missing = [op for op in ops if handler.clause_for(op) is None]
    if not missing:
        return rebuilt
    clauses = list(handler.clauses)
    for op in missing:
        body = Seq("r", OpCall(op, Var("p")), Throw(Var("k"), Var("r")))
        clauses.append(OpClause(op, "p", "k", body))
    return Handle(Handler(handler.ret_binder, handler.ret_body, tuple(clauses)), rebuilt.body)
