"""Small-step machine: rules per calculus, outcomes, fuel and traces."""

import pytest

from src.difftest import GenConfig, generate_many
from src.machine import (
    BOTTOM,
    EMPTY_STORE,
    NIL,
    AppF,
    Decomposition,
    DollarF,
    EntryKind,
    EvaluationError,
    NoRedex,
    OutcomeKind,
    Running,
    SeqF,
    StoreEntry,
    StuckState,
    Terminal,
    Transition,
    decompose,
    evaluate,
    forward_ops,
    fresh_label,
    label_hygiene,
    plug_frames,
    step,
    trace_records,
)
from src.parser import parse_program
from src.syntax import (
    AcLabel,
    Calculus,
    DelLabel,
    Inj,
    LabelSort,
    Pair,
    RefCell,
    Return,
    Seq,
    Shift0,
    Unit,
    Var,
    nat,
    peano_value,
)

A = Inj("A", Unit())
B = Inj("B", Unit())


def run(text: str, calculus: str = "mam", fuel: int = 10_000, **kwargs):
    return evaluate(parse_program(text, Calculus(calculus)), Calculus(calculus), fuel, **kwargs)


def stuck_code(text: str, calculus: str = "mam") -> str:
    cfg = Running(parse_program(text, Calculus(calculus)))
    while True:
        result = step(cfg, Calculus(calculus))
        if isinstance(result, StuckState):
            return result.code
        assert isinstance(result, Transition), result
        cfg = result.config


class TestStore:
    def test_nil_is_present(self):
        label, store = fresh_label(EMPTY_STORE, LabelSort.DEL)
        store = store.assign(label, NIL)
        assert label in store
        assert store.lookup(label).is_nil
        assert store.lookup(DelLabel(7)) is None

    def test_ids_per_sort(self):
        first, store = fresh_label(EMPTY_STORE, LabelSort.AC)
        second, store = fresh_label(store, LabelSort.AC)
        other, _ = fresh_label(store, LabelSort.REF)
        assert (first.id, second.id, other.id) == (0, 1, 0)

    def test_entry_sort_checked(self):
        with pytest.raises(ValueError, match="cannot be stored"):
            EMPTY_STORE.assign(AcLabel(0), StoreEntry(EntryKind.DEL_CONT, Unit()))

    def test_references_never_nil(self):
        with pytest.raises(ValueError, match="never nil"):
            EMPTY_STORE.assign(RefCell(0), NIL)

    def test_assign_is_persistent(self):
        store = EMPTY_STORE.assign(RefCell(0), StoreEntry(EntryKind.REF_VAL, Unit()))
        assert RefCell(0) not in EMPTY_STORE
        assert len(store) == 1


class TestDecompose:
    def test_value(self):
        assert decompose(Return(Unit()), Calculus.MAM) == Terminal(Unit())

    def test_frames_outermost_first(self):
        comp = parse_program(
            "(dollar (let x (app (shift0 k (return ())) ()) (return x)) y (return y))", Calculus.DEL
        )
        inner = comp.body
        result = decompose(inner, Calculus.DEL)
        assert isinstance(result, NoRedex) and result.code == "unbound-shift0"
        whole = decompose(comp, Calculus.DEL)
        assert isinstance(whole, Decomposition) and whole.frames == ()

    def test_plug_frames_rebuilds(self):
        comp = parse_program("(let x (app (force (thunk (lam z (return z)))) ()) (return x))")
        result = decompose(comp, Calculus.MAM)
        assert isinstance(result, Decomposition)
        assert [type(f) for f in result.frames] == [SeqF, AppF]
        assert plug_frames(result.frames, result.redex) == comp

    def test_dollar_frame(self):
        comp = parse_program("(dollar (let x (force (thunk (return ()))) (return x)) y (return y))", Calculus.DEL)
        result = decompose(comp, Calculus.DEL)
        assert isinstance(result.frames[0], DollarF)

    def test_foreign_constructor(self):
        result = decompose(Shift0("k", Return(Unit())), Calculus.MAM)
        assert isinstance(result, NoRedex) and result.code == "foreign-constructor"


class TestCore:
    @pytest.mark.parametrize(
        "text,value,steps",
        [
            ("(return ())", Unit(), 0),
            ("(let x (return (inj A ())) (return x))", A, 1),
            ("(pcase (pair (inj A ()) (inj B ())) (a b) (return (pair b a)))", Pair(B, A), 1),
            ("(case (inj B ()) (A x (return x)) (B y (return (pair y y))))", Pair(Unit(), Unit()), 1),
            ("(force (thunk (return ())))", Unit(), 1),
            ("(app (lam x (return (inj A x))) ())", A, 1),
            ("(prj 2 (cpair (return (inj A ())) (return (inj B ()))))", B, 1),
            ("(app (force (thunk (lam x (return x)))) (inj A ()))", A, 2),
        ],
    )
    def test_values(self, text, value, steps):
        outcome = run(text)
        assert outcome.kind is OutcomeKind.VALUE
        assert outcome.value == value
        assert outcome.steps == steps

    @pytest.mark.parametrize(
        "text,code",
        [
            ("(pcase () (a b) (return a))", "pcase-non-pair"),
            ("(case () (A x (return x)))", "case-non-inj"),
            ("(case (inj C ()) (A x (return x)))", "case-missing-tag"),
            ("(force ())", "force-non-thunk"),
            ("(lam x (return x))", "abs-final"),
            ("(app (return ()) ())", "return-applied"),
            ("(prj 1 (return ()))", "return-projected"),
            ("(cpair (return ()) (return ()))", "cpair-final"),
        ],
    )
    def test_stuck(self, text, code):
        assert stuck_code(text) == code
        assert run(text).kind is OutcomeKind.STUCK

    def test_substitution_avoids_capture(self):
        text = "(app (lam x (return (thunk (lam y (return (pair x y)))))) (inj A ()))"
        outcome = run(text)
        assert outcome.kind is OutcomeKind.VALUE


class TestDelimitedControl:
    def test_return_through_dollar(self):
        outcome = run("(dollar (return (inj A ())) x (return (pair x x)))", "del")
        assert outcome.value == Pair(A, A)

    def test_shift_captures_and_throw_resumes(self):
        outcome = run("(dollar (let y (shift0 k (throw k (inj A ()))) (return (pair y y))) x (return x))", "del")
        assert outcome.kind is OutcomeKind.VALUE
        assert outcome.value == Pair(A, A)

    def test_shift_step_stores_continuation(self):
        program = parse_program("(dollar (shift0 k (return ())) x (return x))", Calculus.DEL)
        result = step(Running(program), Calculus.DEL)
        assert result.rule == "del.shift"
        (label, entry), = result.delta
        assert label == DelLabel(0)
        assert entry.kind is EntryKind.DEL_CONT
        assert result.config.comp == Return(Unit())

    def test_abandoning_the_continuation(self):
        outcome = run("(dollar (let y (shift0 k (return (inj B ()))) (return (inj A ()))) x (return x))", "del")
        assert outcome.value == B

    def test_second_throw_is_bottom(self):
        text = "(dollar (shift0 k (let a (throw k ()) (throw k ()))) x (return x))"
        outcome = run(text, "del")
        assert outcome.kind is OutcomeKind.BOTTOM
        assert outcome.config is BOTTOM

    def test_shift_without_dollar(self):
        assert stuck_code("(shift0 k (return ()))", "del") == "unbound-shift0"

    def test_labels_stay_in_store(self):
        text = "(dollar (let y (shift0 k (throw k (inj A ()))) (return y)) x (return x))"
        seen = []
        run(text, "del", observer=lambda entry: seen.append(label_hygiene(entry.config)))
        assert seen and all(missing is None for missing in seen)


class TestCoroutines:
    PING = """
    (let c (create (thunk (lam x (let y (yield x) (return (pair x y))))))
      (let a (resume c (inj A ()))
        (let b (resume c (inj B ()))
          (return (pair a b)))))
    """

    def test_yield_and_resume(self):
        outcome = run(self.PING, "ac")
        assert outcome.value == Pair(A, Pair(A, B))

    def test_rules_in_order(self):
        outcome = run(self.PING, "ac", want_trace=True)
        rules = [e.rule for e in outcome.trace if e.rule.startswith("ac.")]
        assert rules == ["ac.create", "ac.resume", "ac.yield", "ac.resume", "ac.ret"]

    def test_running_coroutine_is_nil(self):
        outcome = run(self.PING, "ac", want_trace=True)
        resumed = next(e for e in outcome.trace if e.rule == "ac.resume")
        assert resumed.config.store.lookup(AcLabel(0)).is_nil

    def test_finished_coroutine_cannot_resume(self):
        text = "(let c (create (thunk (lam x (return x)))) (let a (resume c ()) (resume c ())))"
        assert run(text, "ac").kind is OutcomeKind.BOTTOM

    def test_yield_outside(self):
        assert stuck_code("(yield ())", "ac") == "yield-outside"

    def test_resume_non_label(self):
        assert stuck_code("(resume () ())", "ac") == "resume-non-label"


class TestEffectHandlers:
    def test_return_clause(self):
        outcome = run("(handle (handler (ret x (return (inj A x)))) (return ()))", "eff")
        assert outcome.value == Inj("A", Unit())

    def test_operation_resumed(self):
        text = "(handle (handler (ret x (return (inj A x))) (on E p k (throw k p))) (op E (inj B ())))"
        outcome = run(text, "eff")
        assert outcome.value == Inj("A", B)

    def test_deep_handler_reinstalled(self):
        text = """
        (handle (handler (ret x (return x)) (on E p k (throw k (inj A p))))
          (let a (op E ()) (let b (op E a) (return b))))
        """
        outcome = run(text, "eff")
        assert outcome.value == Inj("A", Inj("A", Unit()))

    def test_second_throw_is_bottom(self):
        text = "(handle (handler (ret x (return x)) (on E p k (let a (throw k ()) (throw k ())))) (op E ()))"
        assert run(text, "eff").kind is OutcomeKind.BOTTOM

    def test_unhandled_operation(self):
        assert stuck_code("(op E ())", "eff") == "unhandled-op"

    def test_forwarding_completes_handlers(self):
        text = """
        (handle (handler (ret x (return x)) (on E p k (throw k (inj A p))))
          (handle (handler (ret y (return y))) (op E ())))
        """
        program = parse_program(text, Calculus.EFF)
        assert evaluate(program, Calculus.EFF, 1000).kind is OutcomeKind.STUCK
        outcome = evaluate(forward_ops(program), Calculus.EFF, 1000)
        assert outcome.value == Inj("A", Unit())

    def test_forwarding_without_operations_is_identity(self):
        program = parse_program("(handle (handler (ret x (return x))) (return ()))", Calculus.EFF)
        assert forward_ops(program) is program


class TestReferences:
    def test_read_write_read(self):
        text = "(let r (ref (inj A ())) (let i (get r) (let _ (set! r (inj B ())) (let k (get r) (return (pair i k))))))"
        outcome = run(text, "ref")
        assert outcome.value == Pair(A, B)
        assert outcome.store.lookup(RefCell(0)).term == B

    def test_set_returns_unit(self):
        assert run("(let r (ref ()) (set! r (inj A ())))", "ref").value == Unit()

    def test_get_non_reference(self):
        assert stuck_code("(get ())", "ref") == "get-non-ref"


class TestDriver:
    def test_fuel_exhausted(self):
        omega = "(app (lam x (app (force x) x)) (thunk (lam x (app (force x) x))))"
        outcome = run(omega, fuel=50)
        assert outcome.kind is OutcomeKind.FUEL_EXHAUSTED
        assert outcome.steps == 50

    def test_zero_fuel_still_reports_values(self):
        outcome = run("(return ())", fuel=0)
        assert outcome.kind is OutcomeKind.VALUE

    def test_trace_starts_with_init(self):
        outcome = run("(let x (return ()) (return x))", want_trace=True)
        assert [e.rule for e in outcome.trace] == ["init", "let"]
        records = trace_records(outcome)
        assert records[0] == {"step": 0, "rule": "init", "computation": "(let x (return ()) (return x))", "store_delta": {}}

    def test_trace_cap(self):
        outcome = run("(let a (return ()) (let b (return ()) (let c (return ()) (return c))))", want_trace=True, trace_cap=2)
        assert len(outcome.trace) == 2
        assert outcome.trace_truncated

    def test_store_delta_recorded(self):
        outcome = run("(let r (ref (nat 1)) (get r))", "ref", want_trace=True)
        created = next(e for e in outcome.trace if e.rule == "ref.create")
        assert created.to_record()["store_delta"] == {"#r0": "(nat 1)"}

    def test_rejects_non_programs(self):
        with pytest.raises(EvaluationError, match="free variable"):
            evaluate(Return(Var("x")), Calculus.MAM, 10)
        with pytest.raises(EvaluationError, match="not a constructor"):
            evaluate(Shift0("k", Return(Unit())), Calculus.MAM, 10)

    def test_default_fuel_from_environment(self, monkeypatch):
        monkeypatch.setenv("CTLCALC_FUEL", "7")
        omega = parse_program("(app (lam x (app (force x) x)) (thunk (lam x (app (force x) x))))")
        assert evaluate(omega, Calculus.MAM).steps == 7

    def test_bottom_state_has_no_successor(self):
        with pytest.raises(ValueError):
            step(BOTTOM, Calculus.DEL)

    def test_value_steps_are_deterministic(self):
        text = "(let r (ref (nat 2)) (let x (get r) (return (pair x x))))"
        assert run(text, "ref").steps == run(text, "ref").steps
        assert run(text, "ref").value == Pair(nat(2), nat(2))

    def test_sequenced_value(self):
        result = step(Running(Seq("x", Return(Unit()), Return(Var("x")))), Calculus.MAM)
        assert result.rule == "let"


class TestDeepValues:
    def test_large_numeral(self):
        outcome = run("(return (nat 5000))")
        assert outcome.kind is OutcomeKind.VALUE
        assert peano_value(outcome.value) == 5000
        assert outcome.describe().count("Succ") == 5000

    def test_large_numeral_bound_and_paired(self):
        outcome = run("(let x (return (nat 5000)) (return (pair x ())))")
        assert outcome.steps == 1
        assert peano_value(outcome.value.first) == 5000

    def test_large_numeral_in_store(self):
        outcome = run("(let r (ref (nat 3000)) (get r))", "ref", want_trace=True)
        assert peano_value(outcome.value) == 3000
        created = next(e for e in outcome.trace if e.rule == "ref.create")
        assert created.to_record()["store_delta"] == {"#r0": "(nat 3000)"}


class StoreHistory:
    """Observer checking that the store only grows along a run."""

    ONE_SHOT = (LabelSort.DEL, LabelSort.EFF)

    def __init__(self):
        self.previous = {}
        self.consumed = 0

    def __call__(self, entry):
        if not isinstance(entry.config, Running):
            return
        store = entry.config.store
        current = dict(store.items())
        assert set(self.previous) <= set(current), f"store shrank at step {entry.index}"
        for label, old in self.previous.items():
            if old.is_nil and label.sort in self.ONE_SHOT:
                assert current[label].is_nil, f"{label} revived at step {entry.index}"
        for label, stored in current.items():
            assert store.next_id(label.sort) > label.id, f"{label} not below next id"
            if stored.is_nil and label.sort in self.ONE_SHOT:
                self.consumed += 1
        self.previous = current


class TestStoreInvariants:
    @pytest.mark.parametrize("calculus", [Calculus.DEL, Calculus.AC, Calculus.EFF, Calculus.REF])
    def test_generated_runs(self, calculus):
        allocated = 0
        for program in generate_many(GenConfig(calculus, seed=13), 150):
            history = StoreHistory()
            evaluate(program, calculus, 5_000, observer=history)
            allocated += len(history.previous)
        assert allocated > 0

    @pytest.mark.parametrize("calculus", [Calculus.DEL, Calculus.EFF])
    def test_consumed_continuations_seen(self, calculus):
        histories = []
        for program in generate_many(GenConfig(calculus, seed=14), 150):
            history = StoreHistory()
            evaluate(program, calculus, 5_000, observer=history)
            histories.append(history)
        assert any(history.consumed for history in histories)

    def test_counterexample_run(self, programs):
        history = StoreHistory()
        outcome = evaluate(programs["M_del"], Calculus.DEL, 10_000, observer=history)
        assert outcome.kind is OutcomeKind.BOTTOM
        assert history.consumed > 0
