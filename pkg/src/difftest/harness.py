"""Differential testing: run a program and its translation, compare outcomes.

The source gets a fixed amount of fuel and the target gets ``fuel_policy(n)``
steps when the source finished in ``n``. Fuel exhaustion on either side is
inconclusive, never a disagreement. Runs of coroutine targets are watched
for well-formedness at every step.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

from src.config import get_workers
from src.logger import log_info, log_success, log_warning
from src.machine import (
    Outcome,
    OutcomeKind,
    Running,
    TraceEntry,
    ac_well_formed,
    evaluate,
    label_hygiene,
)
from src.parser import parse_program, print_program
from src.syntax import Calculus, Computation, peano_value
from src.translate import TranslationId, get_translation, refcell_state

from .corpus import corpus_entry, corpus_for
from .generator import GenConfig, generate
from .observe import Observation, observation_json, observe

DEFAULT_SOURCE_FUEL = 10_000

# refcells created by these translations only ever hold a Peano counter
COUNTER_TRANSLATIONS = {TranslationId.DEL_TO_AC_COUNTER, TranslationId.EFF_TO_AC}


class InvariantError(RuntimeError):
    """A runtime invariant failed during a run; always a bug in the machine or a translation."""

    def __init__(self, side: str, step: int, message: str):
        self.side = side
        self.step = step
        super().__init__(f"{side} run, step {step}: {message}")


def fuel_policy(source_steps: int) -> int:
    return 1000 + 64 * source_steps + 16 * source_steps * source_steps


class VerdictStatus(str, Enum):
    AGREE = "agree"
    DISAGREE = "disagree"
    INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    status: VerdictStatus
    translation: str
    source_kind: OutcomeKind
    target_kind: Optional[OutcomeKind] = None
    source_steps: int = 0
    target_steps: int = 0
    observation: Optional[Observation] = None
    fuel_side: Optional[str] = None
    seed: Optional[int] = None
    index: Optional[int] = None
    name: Optional[str] = None
    program_text: str = ""
    detail: str = ""

    @property
    def kind(self) -> OutcomeKind:
        """The shared outcome kind of an agreeing pair."""
        return self.source_kind

    def to_record(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "index": self.index,
            "seed": self.seed,
            "translation": self.translation,
            "verdict": self.status.value,
            "source": self.source_kind.value,
            "target": self.target_kind.value if self.target_kind else None,
            "source_steps": self.source_steps,
            "target_steps": self.target_steps,
        }
        if self.name is not None:
            record["name"] = self.name
        if self.observation is not None:
            record["observation"] = observation_json(self.observation)
        if self.fuel_side is not None:
            record["fuel_side"] = self.fuel_side
        if self.status is VerdictStatus.DISAGREE:
            record["program"] = self.program_text
            record["detail"] = self.detail
        return record


# ============================================================================
# OBSERVERS
# ============================================================================


class HygieneWatch:
    """Every continuation and reference label in the computation is bound in the store."""

    def __init__(self, side: str):
        self.side = side

    def __call__(self, entry: TraceEntry) -> None:
        missing = label_hygiene(entry.config)
        if missing is not None:
            raise InvariantError(self.side, entry.index, f"label {missing} is not in the store")


class CoroutineWatch:
    """Well-formedness of every coroutine configuration; optionally counter monotonicity."""

    def __init__(self, side: str, track_counters: bool = False):
        self.side = side
        self.track_counters = track_counters
        self.counters: Dict[Any, int] = {}

    def __call__(self, entry: TraceEntry) -> None:
        violation = ac_well_formed(entry.config)
        if violation is not None:
            raise InvariantError(
                self.side, entry.index, f"ill-formed configuration at {violation.label}: {violation.clause}"
            )
        if not self.track_counters or not isinstance(entry.config, Running):
            return
        for label, stored in entry.delta:
            state = refcell_state(stored)
            count = peano_value(state) if state is not None else None
            if count is None:
                continue
            previous = self.counters.get(label)
            if previous is not None and count < previous:
                raise InvariantError(self.side, entry.index, f"counter {label} went from {previous} to {count}")
            self.counters[label] = count


def _watch(calculus: Calculus, side: str, track_counters: bool) -> Callable[[TraceEntry], None]:
    if calculus is Calculus.AC:
        return CoroutineWatch(side, track_counters)
    return HygieneWatch(side)


# ============================================================================
# SINGLE PROGRAM
# ============================================================================


def diff_run(
    program: Computation,
    translation_id: TranslationId,
    source_fuel: int = DEFAULT_SOURCE_FUEL,
    policy: Callable[[int], int] = fuel_policy,
    seed: Optional[int] = None,
    index: Optional[int] = None,
    name: Optional[str] = None,
    check_invariants: bool = True,
) -> Verdict:
    """Evaluate ``program`` and its translation and compare the two outcomes."""
    tid = TranslationId(translation_id)
    translation = get_translation(tid)
    target_program = translation.translate(program)
    text = print_program(program)

    def verdict(status: VerdictStatus, source: Outcome, target: Optional[Outcome] = None, **extra) -> Verdict:
        return Verdict(
            status,
            tid.value,
            source.kind,
            target.kind if target else None,
            source.steps,
            target.steps if target else 0,
            seed=seed,
            index=index,
            name=name,
            program_text=text,
            **extra,
        )

    source_watch = _watch(translation.source, "source", False) if check_invariants else None
    source = evaluate(program, translation.source, source_fuel, observer=source_watch)
    if source.kind is OutcomeKind.FUEL_EXHAUSTED:
        return verdict(VerdictStatus.INCONCLUSIVE, source, fuel_side="source")

    target_watch = _watch(translation.target, "target", tid in COUNTER_TRANSLATIONS) if check_invariants else None
    target = evaluate(target_program, translation.target, policy(source.steps), observer=target_watch)
    if target.kind is OutcomeKind.FUEL_EXHAUSTED:
        return verdict(VerdictStatus.INCONCLUSIVE, source, target, fuel_side="target")

    if source.kind is not target.kind:
        return verdict(
            VerdictStatus.DISAGREE, source, target, detail=f"{source.describe()} vs {target.describe()}"
        )
    if source.kind is OutcomeKind.VALUE:
        expected, actual = observe(source.value), observe(target.value)
        if expected != actual:
            return verdict(
                VerdictStatus.DISAGREE, source, target, detail=f"{source.describe()} vs {target.describe()}"
            )
        return verdict(VerdictStatus.AGREE, source, target, observation=expected)
    return verdict(VerdictStatus.AGREE, source, target)


def reproduce(verdict: Verdict, source_fuel: int = DEFAULT_SOURCE_FUEL) -> Verdict:
    """Re-run a recorded verdict from its program text."""
    translation = get_translation(TranslationId(verdict.translation))
    program = parse_program(verdict.program_text, translation.source)
    return diff_run(
        program,
        TranslationId(verdict.translation),
        source_fuel,
        seed=verdict.seed,
        index=verdict.index,
        name=verdict.name,
    )


# ============================================================================
# SUITES
# ============================================================================


@dataclass
class SuiteReport:
    translation: str
    seed: int
    count: int
    items: List[Verdict] = field(default_factory=list)

    def totals(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in VerdictStatus}
        for item in self.items:
            counts[item.status.value] += 1
        return counts

    @property
    def disagreements(self) -> List[Verdict]:
        return [item for item in self.items if item.status is VerdictStatus.DISAGREE]

    @property
    def inconclusive_rate(self) -> float:
        return self.totals()["inconclusive"] / len(self.items) if self.items else 0.0

    def summary(self) -> Dict[str, Any]:
        return {
            "translation": self.translation,
            "seed": self.seed,
            "count": len(self.items),
            **self.totals(),
            "inconclusive_rate": round(self.inconclusive_rate, 4),
        }

    def records(self) -> List[Dict[str, Any]]:
        return [item.to_record() for item in self.items]

    def to_json_lines(self) -> str:
        lines = [json.dumps(record, sort_keys=True, ensure_ascii=False) for record in self.records()]
        lines.append(json.dumps({"summary": self.summary()}, sort_keys=True))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class _Job:
    translation: TranslationId
    source_fuel: int
    gen: Optional[GenConfig] = None
    index: Optional[int] = None
    corpus_name: Optional[str] = None


def _run_job(job: _Job) -> Verdict:
    # module level so worker processes can unpickle it
    if job.corpus_name is not None:
        entry = corpus_entry(job.corpus_name)
        return diff_run(entry.program, job.translation, job.source_fuel, name=entry.name)
    program = generate(job.gen, job.index)
    return diff_run(program, job.translation, job.source_fuel, seed=job.gen.seed, index=job.index)


def run_suite(
    gen: GenConfig,
    translation_id: TranslationId,
    count: int,
    source_fuel: int = DEFAULT_SOURCE_FUEL,
    include_corpus: bool = False,
    workers: Optional[int] = None,
) -> SuiteReport:
    """Differential-test ``count`` generated programs, in index order.

    Results do not depend on ``workers``; a pool only changes wall time.
    """
    tid = TranslationId(translation_id)
    source = get_translation(tid).source
    if Calculus(gen.calculus) is not source:
        raise ValueError(f"{tid.value} translates {source.value} programs, generator produces {Calculus(gen.calculus).value}")

    jobs = [_Job(tid, source_fuel, gen=gen, index=i) for i in range(count)]
    if include_corpus:
        jobs.extend(_Job(tid, source_fuel, corpus_name=e.name) for e in corpus_for(source))

    workers = get_workers() if workers is None else workers
    log_info(f"difftest {tid.value}: {len(jobs)} programs, seed {gen.seed}, {workers} worker(s)")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            items = list(pool.map(_run_job, jobs, chunksize=8))
    else:
        items = [_run_job(job) for job in jobs]

    report = SuiteReport(tid.value, gen.seed, count, items)
    for item in report.disagreements:
        where = item.name if item.name is not None else f"#{item.index}"
        log_warning(f"disagreement on {where}: {item.detail}")
    totals = report.totals()
    if not report.disagreements:
        log_success(f"{totals['agree']} agree, {totals['inconclusive']} inconclusive")
    return report
