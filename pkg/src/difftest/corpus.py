"""Hand-written programs with known outcomes.

Each entry records the source calculus, the outcome kind the source machine
must reach and, for values, the expected observation.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional

from src.machine import OutcomeKind
from src.parser import parse_program
from src.syntax import Calculus, Computation

from .observe import OInj, OPair, OUnit, Observation

OMEGA = "(app (lam x (app (force x) x)) (thunk (lam x (app (force x) x))))"

M_REF = """
(let r (ref (inj A ()))
  (let i (get r)
    (let _ (set! r (inj B ()))
      (let k (get r)
        (return (pair i k))))))
"""


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    calculus: Calculus
    source: str
    expected_kind: OutcomeKind
    expected_observation: Optional[Observation] = None
    description: str = ""

    @property
    def program(self) -> Computation:
        return parse_program(self.source, self.calculus)


_ENTRIES = (
    CorpusEntry(
        "M_del",
        Calculus.DEL,
        """
        (dollar
          (let j (shift0 k1
                   (let r1 (throw k1 (nat 10))
                     (let r2 (throw k1 (nat 20))
                       (return r1))))
            (shift0 k2 (return (nat 30))))
          i (return i))
        """,
        OutcomeKind.BOTTOM,
        description="second throw to a continuation that was already resumed",
    ),
    CorpusEntry(
        "double_throw_del",
        Calculus.DEL,
        """
        (dollar
          (shift0 k
            (let a (throw k (nat 1))
              (let b (throw k (nat 2))
                (return (pair a b)))))
          x (return x))
        """,
        OutcomeKind.BOTTOM,
        description="one-shot continuation thrown to twice",
    ),
    CorpusEntry(
        "single_throw_del",
        Calculus.DEL,
        "(dollar (let y (shift0 k (throw k (inj A ()))) (return (pair y y))) x (return x))",
        OutcomeKind.VALUE,
        OPair(OInj("A", OUnit()), OInj("A", OUnit())),
        description="capture and resume once",
    ),
    CorpusEntry(
        "double_throw_eff",
        Calculus.EFF,
        """
        (handle
          (handler (ret x (return x))
            (on E p k
              (let a (throw k (nat 1))
                (let b (throw k (nat 2))
                  (return (pair a b))))))
          (op E ()))
        """,
        OutcomeKind.BOTTOM,
        description="handler resumes its one-shot continuation twice",
    ),
    CorpusEntry(
        "resume_eff",
        Calculus.EFF,
        """
        (handle
          (handler (ret x (return (inj B x)))
            (on E p k (throw k (pair p p))))
          (let y (op E (inj A ())) (return y)))
        """,
        OutcomeKind.VALUE,
        OInj("B", OPair(OInj("A", OUnit()), OInj("A", OUnit()))),
        description="operation answered through the return clause",
    ),
    CorpusEntry(
        "M_ref",
        Calculus.REF,
        M_REF,
        OutcomeKind.VALUE,
        OPair(OInj("A", OUnit()), OInj("B", OUnit())),
        description="read, write, read",
    ),
    CorpusEntry(
        "L_ref",
        Calculus.REF,
        f"""
        (let r {M_REF}
          (pcase r (a b)
            (case a
              (A u (case b (B w (return ())) (A w {OMEGA})))
              (B u {OMEGA}))))
        """,
        OutcomeKind.VALUE,
        OUnit(),
        description="diverges unless the reads return A then B",
    ),
    CorpusEntry(
        "omega",
        Calculus.MAM,
        OMEGA,
        OutcomeKind.FUEL_EXHAUSTED,
        description="self-application, never terminates",
    ),
)


@lru_cache(maxsize=None)
def corpus() -> Dict[str, CorpusEntry]:
    return {entry.name: entry for entry in _ENTRIES}


def corpus_entry(name: str) -> CorpusEntry:
    entries = corpus()
    if name not in entries:
        raise KeyError(f"no corpus program {name!r}; known: {', '.join(sorted(entries))}")
    return entries[name]


def corpus_for(calculus: Calculus) -> List[CorpusEntry]:
    """Entries whose program also belongs to ``calculus``; core-only programs belong to every calculus."""
    calculus = Calculus(calculus)
    return [e for e in _ENTRIES if e.calculus in (calculus, Calculus.MAM)]
