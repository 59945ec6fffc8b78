"""Runtime helpers of the counter-based translation, as closed coroutine-calculus phrases."""

from typing import Dict

from src.syntax import Calculus, Term

from .template import template_term


class HelperError(ValueError):
    """Unknown helper name."""


def fix(body: str) -> str:
    """Self-application fixed point of the thunk ``body``: ``(λx.(force body){(force x) x}) {λx. ...}``."""
    half = f"(lam x (app (force {body}) (thunk (app (force x) x))))"
    return f"(app {half} (thunk {half}))"


ZERO = "(inj Zero ())"

SUCC = "(inj Succ ?0)"

INCR = "(thunk (lam n (return (inj Succ n))))"

CMP = (
    "(thunk (lam f (lam n (lam m"
    " (case n"
    "  (Zero u (case m (Zero w (return (inj True ()))) (Succ w (return (inj False ())))))"
    "  (Succ n' (case m (Zero w (return (inj False ()))) (Succ m' (app (app (force f) n') m')))))))))"
)

COMPARE = f"(thunk {fix(CMP)})"

# state machine of a reference cell: Set v stores v, Get answers the state
TH = (
    "(thunk (lam f (lam s (lam q"
    " (case q"
    "  (Set v (let q' (yield ()) (app (app (force f) v) q')))"
    "  (Get u (let q' (yield s) (app (app (force f) s) q'))))))))"
)

REFCELL = f"(thunk (lam y (let q' (return y) (app (app (force (thunk {fix(TH)})) ?0) q'))))"

REF = f"(thunk (lam v (create {REFCELL.replace('?0', 'v')})))"

GET = "(thunk (lam c (resume c (inj Get ()))))"

SET = "(thunk (lam c (lam v (resume c (inj Set v)))))"

FAIL = "(thunk (let z (create (thunk (lam _ (return ())))) (let _ (resume z ()) (resume z ()))))"

HELPERS: Dict[str, str] = {
    "fail": FAIL,
    "zero": ZERO,
    "succ": SUCC,
    "incr": INCR,
    "compare": COMPARE,
    "cmp": CMP,
    "ref": REF,
    "refcell": REFCELL,
    "th": TH,
    "get": GET,
    "set": SET,
}


def emit_helper(name: str) -> Term:
    """Helper value by name. ``refcell`` and ``succ`` have one value hole ``?0``."""
    try:
        text = HELPERS[name]
    except KeyError:
        raise HelperError(f"unknown helper {name!r}; known: {', '.join(sorted(HELPERS))}") from None
    return template_term(text, Calculus.AC, sort="value")
