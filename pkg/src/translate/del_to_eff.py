"""Delimited control to effect handlers, through a reserved ``shift0`` operation."""

from typing import Optional

from src.machine import operations_in
from src.syntax import Calculus, Dollar, Shift0, Term, Throw

from .base import Translation, TranslationError

RESERVED_OP = "shift0"

SHIFT0 = f"(op {RESERVED_OP} (thunk (lam $0 ?0)))"

THROW = "(throw ?0 ?1)"

DOLLAR = f"(handle (handler (ret $0 ?1) (on {RESERVED_OP} p k (app (force p) k))) ?0)"


class DelToEff(Translation):
    name = "del_to_eff"
    source = Calculus.DEL
    target = Calculus.EFF

    def template_text(self, node: Term) -> Optional[str]:
        if isinstance(node, Shift0):
            return SHIFT0
        if isinstance(node, Throw):
            return THROW
        if isinstance(node, Dollar):
            return DOLLAR
        return None

    def validate(self, program: Term) -> None:
        if RESERVED_OP in operations_in(program):
            raise TranslationError(f"{self.name}: operation name {RESERVED_OP!r} is reserved")
        super().validate(program)
