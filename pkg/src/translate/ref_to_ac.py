"""References to coroutines: each cell is a coroutine running the refcell state machine."""

from typing import Optional

from src.syntax import Calculus, RefCreate, RefGet, RefSet, Term

from .base import Translation
from .helpers import REFCELL

CREATE = f"(create {REFCELL})"

SET = "(resume ?0 (inj Set ?1))"

GET = "(resume ?0 (inj Get ()))"


class RefToAc(Translation):
    name = "ref_to_ac"
    source = Calculus.REF
    target = Calculus.AC

    def template_text(self, node: Term) -> Optional[str]:
        if isinstance(node, RefCreate):
            return CREATE
        if isinstance(node, RefSet):
            return SET
        if isinstance(node, RefGet):
            return GET
        return None
