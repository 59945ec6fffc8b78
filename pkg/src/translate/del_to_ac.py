"""Delimited control to asymmetric coroutines: the naive and the counter-based encodings."""

from typing import Optional

from src.syntax import Calculus, Dollar, Shift0, Term, Throw

from .base import Translation
from .helpers import COMPARE, FAIL, GET, INCR, REF, SET, ZERO

# ⟦shift0 k. L⟧ = yield {λk.⟦L⟧}
SHIFT0 = "(yield (thunk (lam $0 ?0)))"

NAIVE_DOLLAR = (
    "(let z (create (thunk (lam _ (let $0 ?0 (return (thunk (lam _ ?1)))))))"
    " (let res (resume z ()) (app (force res) z)))"
)

NAIVE_THROW = "(let res (resume ?0 ?1) (app (force res) ?0))"

# the continuation is the triple ((z, zc), i): coroutine, counter cell, index
COUNTER_DOLLAR = (
    "(let z (create (thunk (lam _ (let $0 ?0 (return (thunk (lam _ ?1)))))))"
    f" (let zc (app (force {REF}) {ZERO})"
    f"  (let res (resume z ()) (app (force res) (pair (pair z zc) {ZERO})))))"
)

COUNTER_THROW = (
    "(pcase ?0 (zz i) (pcase zz (z zc)"
    f" (let j (app (force {GET}) zc)"
    f" (let b (app (app (force {COMPARE}) i) j)"
    "  (case b"
    f"   (True u (let i' (app (force {INCR}) i)"
    f"            (let _ (app (app (force {SET}) zc) i')"
    "             (let res (resume z ?1) (app (force res) (pair (pair z zc) i'))))))"
    f"   (False u (force {FAIL})))))))"
)


class NaiveDelToAc(Translation):
    """Runs each dollar body in a fresh coroutine; a captured continuation is the coroutine itself.

    Not one-shot preserving: a yield re-arms the coroutine, so a consumed
    continuation can be resumed again.
    """

    name = "del_to_ac_naive"
    source = Calculus.DEL
    target = Calculus.AC

    def template_text(self, node: Term) -> Optional[str]:
        if isinstance(node, Dollar):
            return NAIVE_DOLLAR
        if isinstance(node, Shift0):
            return SHIFT0
        if isinstance(node, Throw):
            return NAIVE_THROW
        return None


class CounterDelToAc(Translation):
    """Pairs every coroutine with a counter cell; a continuation is valid only while
    the counter still equals the index it was captured at."""

    name = "del_to_ac_counter"
    source = Calculus.DEL
    target = Calculus.AC

    def template_text(self, node: Term) -> Optional[str]:
        if isinstance(node, Dollar):
            return COUNTER_DOLLAR
        if isinstance(node, Shift0):
            return SHIFT0
        if isinstance(node, Throw):
            return COUNTER_THROW
        return None
