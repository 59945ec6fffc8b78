"""Coroutine well-formedness and label hygiene."""

import pytest

from src.machine import (
    BOTTOM,
    EMPTY_STORE,
    NIL,
    EntryKind,
    Running,
    StoreEntry,
    ac_well_formed,
    active_labels,
    evaluate,
    label_hygiene,
)
from src.syntax import (
    AcLabel,
    App,
    Calculus,
    DelLabel,
    Force,
    Labeled,
    RefCell,
    Return,
    Seq,
    Thunk,
    Unit,
    Var,
)
from src.translate import TranslationId, translate

C0, C1 = AcLabel(0), AcLabel(1)


def store_with(**entries):
    store = EMPTY_STORE
    for name, entry in entries.items():
        store = store.assign(AcLabel(int(name[1:])), entry)
    return store


class TestWellFormedness:
    def test_running_coroutine_with_nil_entry(self):
        cfg = Running(Seq("x", Labeled(C0, Return(Unit())), Return(Var("x"))), store_with(c0=NIL))
        assert ac_well_formed(cfg) is None

    def test_nested_coroutines(self):
        comp = Labeled(C0, Seq("x", Labeled(C1, Return(Unit())), Return(Var("x"))))
        cfg = Running(comp, store_with(c0=NIL, c1=NIL))
        assert ac_well_formed(cfg) is None
        assert active_labels(comp) == {C0, C1}

    def test_label_nested_in_itself(self):
        cfg = Running(Labeled(C0, Labeled(C0, Return(Unit()))), store_with(c0=NIL))
        violation = ac_well_formed(cfg)
        assert violation is not None
        assert violation.label == C0
        assert violation.clause == "l ∉ activeLabels(M)"

    def test_active_label_in_let_body(self):
        cfg = Running(Seq("x", Return(Unit()), Labeled(C0, Return(Unit()))), store_with(c0=NIL))
        violation = ac_well_formed(cfg)
        assert violation.clause == "no active labels in let body"

    def test_active_label_in_argument(self):
        thunk = Thunk(Labeled(C0, Return(Unit())))
        cfg = Running(App(Force(thunk), Unit()), store_with(c0=NIL))
        assert ac_well_formed(cfg) is not None

    def test_active_label_must_be_nil(self):
        suspended = StoreEntry(EntryKind.AC_VAL, Thunk(Return(Unit())))
        cfg = Running(Labeled(C0, Return(Unit())), store_with(c0=suspended))
        violation = ac_well_formed(cfg)
        assert violation.clause == "θ(l) = nil for every active l"

    def test_active_label_missing_from_store(self):
        cfg = Running(Labeled(C0, Return(Unit())), EMPTY_STORE)
        assert ac_well_formed(cfg) is not None

    def test_stored_value_without_active_labels(self):
        bad = StoreEntry(EntryKind.AC_VAL, Thunk(Labeled(C0, Return(Unit()))))
        cfg = Running(Return(Unit()), store_with(c1=bad))
        violation = ac_well_formed(cfg)
        assert "stored value" in violation.clause

    def test_bottom_is_well_formed(self):
        assert ac_well_formed(BOTTOM) is None


class TestTranslatedRuns:
    @pytest.mark.parametrize(
        "name,translation",
        [
            ("M_del", TranslationId.DEL_TO_AC_NAIVE),
            ("M_del", TranslationId.DEL_TO_AC_COUNTER),
            ("double_throw_del", TranslationId.DEL_TO_AC_COUNTER),
            ("single_throw_del", TranslationId.DEL_TO_AC_COUNTER),
            ("double_throw_eff", TranslationId.EFF_TO_AC),
            ("resume_eff", TranslationId.EFF_TO_AC),
            ("M_ref", TranslationId.REF_TO_AC),
            ("L_ref", TranslationId.REF_TO_AC),
        ],
    )
    def test_every_configuration_well_formed(self, programs, name, translation):
        violations = []

        def check(entry):
            found = ac_well_formed(entry.config)
            if found is not None:
                violations.append((entry.index, found))

        evaluate(translate(programs[name], translation), Calculus.AC, 10**6, observer=check)
        assert violations == []


class TestLabelHygiene:
    def test_missing_continuation_label(self):
        assert label_hygiene(Running(Return(DelLabel(0)))) == DelLabel(0)

    def test_present_label(self):
        store = EMPTY_STORE.assign(RefCell(0), StoreEntry(EntryKind.REF_VAL, Unit()))
        assert label_hygiene(Running(Return(RefCell(0)), store)) is None

    def test_coroutine_labels_ignored(self):
        assert label_hygiene(Running(Return(AcLabel(4)))) is None
