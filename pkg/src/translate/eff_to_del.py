"""Effect handlers to delimited control."""

from typing import Optional

from src.syntax import Calculus, Handle, OpCall, Term, Throw

from .base import Translation
from .template import param

THROW = "(app (force ?0) ?1)"


def op_template(op: str) -> str:
    # ⟦op V⟧ = shift0 k. λh. (force h) (inj_op ⟨⟦V⟧, {λy. (throw k y) h}⟩)
    return f"(shift0 k (lam h (app (force h) (inj {op} (pair ?0 (thunk (lam y (app (throw k y) h))))))))"


def handle_template(ops) -> str:
    """``(⟦M⟧ $ x. λ_.⟦M_ret⟧) {H^ops}``; hole 0 is the handled body, hole 1 the return
    clause and hole i+2 the i-th operation clause."""
    clauses = " ".join(
        f"({op} z (pcase z ({param(2 * i + 1)} {param(2 * i + 2)}) ?{i + 2}))"
        for i, op in enumerate(ops)
    )
    return f"(app (dollar ?0 $0 (lam _ ?1)) (thunk (lam c (case c {clauses}))))"


class EffToDel(Translation):
    name = "eff_to_del"
    source = Calculus.EFF
    target = Calculus.DEL

    def template_text(self, node: Term) -> Optional[str]:
        if isinstance(node, OpCall):
            return op_template(node.op)
        if isinstance(node, Throw):
            return THROW
        if isinstance(node, Handle):
            return handle_template(node.handler.ops)
        return None
