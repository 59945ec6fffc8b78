"""Surface syntax: parsing, errors and printing."""

import pytest

from src.difftest import GenConfig, corpus, generate
from src.parser import ParseError, ProgramPrintError, parse_phrase, parse_program, print_program, read_calculus_header
from src.syntax import (
    AcLabel,
    Calculus,
    Dollar,
    Hole,
    Labeled,
    OpCall,
    Return,
    SCase,
    Seq,
    Unit,
    Var,
    alpha_equal,
    nat,
)
from src.translate import TranslationId, translate


class TestParsing:
    def test_let(self, parse):
        assert parse("(let x (return ()) (return x))") == Seq("x", Return(Unit()), Return(Var("x")))

    def test_numeral_sugar(self, parse):
        assert parse("(return (nat 3))") == Return(nat(3))

    def test_comments_and_whitespace(self, parse):
        assert parse("; a comment\n(return\n  ())  ; trailing\n") == Return(Unit())

    def test_empty_case(self, parse):
        assert parse("(case ())") == SCase(Unit(), ())

    def test_dollar(self):
        term = parse_program("(dollar (return ()) x (return x))", Calculus.DEL)
        assert term == Dollar(Return(Unit()), "x", Return(Var("x")))

    def test_handler(self):
        term = parse_program("(handle (handler (ret x (return x)) (on E p k (throw k p))) (op E ()))", "eff")
        assert term.handler.ops == ("E",)
        assert term.body == OpCall("E", Unit())

    def test_set_bang(self):
        term = parse_program("(let r (ref ()) (set! r (inj A ())))", Calculus.REF)
        assert term.body.constructor == "RefSet"

    def test_header_selects_calculus(self):
        text = ";; calculus: del\n(dollar (return ()) x (return x))"
        assert read_calculus_header(text) is Calculus.DEL
        assert isinstance(parse_program(text), Dollar)

    def test_header_after_blank_lines(self):
        assert read_calculus_header("\n  \n  ;; calculus: ref\n(return ())") is Calculus.REF

    @pytest.mark.parametrize(
        "text",
        [
            ";; a comment first\n;; calculus: del\n(return ())",
            "(return ())\n;; calculus: del\n",
            "(let x (return ())\n  ;; calculus: del\n  (return x))",
        ],
    )
    def test_header_must_lead(self, text):
        assert read_calculus_header(text) is None
        with pytest.raises(ParseError, match="no calculus given"):
            parse_program(text)

    def test_unknown_leading_header(self):
        with pytest.raises(ParseError, match="unknown calculus 'lisp'"):
            read_calculus_header("\n;; calculus: lisp\n(return ())")

    def test_explicit_calculus_overrides_header(self):
        text = ";; calculus: del\n(return ())"
        assert parse_program(text, Calculus.AC) == Return(Unit())


class TestParseErrors:
    def test_unbound_variable_position(self, parse):
        with pytest.raises(ParseError, match="unbound variable y") as info:
            parse("(let x (return ()) (return y))")
        assert (info.value.line, info.value.column) == (1, 28)

    def test_form_outside_calculus(self, parse):
        with pytest.raises(ParseError, match="shift0 is not part of calculus mam") as info:
            parse("(shift0 k (return ()))")
        assert "return" in info.value.expected
        assert "shift0" not in info.value.expected

    def test_missing_paren(self, parse):
        with pytest.raises(ParseError, match="end of input") as info:
            parse("(return ()")
        assert info.value.expected == {")"}

    def test_error_on_second_line(self, parse):
        with pytest.raises(ParseError) as info:
            parse("(let x (return ())\n  (bogus x))")
        assert info.value.line == 2
        assert info.value.column == 4

    def test_runtime_labels_rejected(self, parse):
        with pytest.raises(ParseError, match="runtime label"):
            parse("(return #d0)")

    @pytest.mark.parametrize(
        "text,message",
        [
            ("(pcase () (a a) (return a))", "duplicate binder"),
            ("(case () (A x (return x)) (A y (return y)))", "duplicate case tag A"),
            ("(prj 3 (cpair (return ()) (return ())))", "projection index 3"),
            ("(lam $0 (return $0))", "template parameter"),
            ("(let x ?0 (return x))", "unexpected"),
            ("(return ()) (return ())", "end of input"),
        ],
    )
    def test_malformed(self, parse, text, message):
        with pytest.raises(ParseError, match=message):
            parse(text)

    def test_duplicate_handler_clause(self):
        text = "(handle (handler (ret x (return x)) (on E p k (return p)) (on E q j (return q))) (return ()))"
        with pytest.raises(ParseError, match="duplicate handler clause for E"):
            parse_program(text, Calculus.EFF)

    def test_no_calculus(self):
        with pytest.raises(ParseError, match="no calculus given"):
            parse_program("(return ())")

    def test_parse_error_is_value_error(self, parse):
        with pytest.raises(ValueError):
            parse("(")


class TestPhrases:
    def test_holes_and_parameters(self):
        term = parse_phrase("(let $0 ?0 (return $0))")
        assert term == Seq("$0", Hole(0), Return(Var("$0")))

    def test_open_phrase(self):
        assert parse_phrase("(return x)") == Return(Var("x"))

    def test_value_phrase(self):
        assert parse_phrase("(inj Succ ?0)", sort="value").has_holes


class TestPrinting:
    def test_runtime_forms_not_printable(self):
        with pytest.raises(ProgramPrintError):
            print_program(Labeled(AcLabel(0), Return(Unit())))
        with pytest.raises(ProgramPrintError):
            print_program(Return(Hole(0)))

    def test_corpus_round_trip(self):
        for entry in corpus().values():
            program = entry.program
            assert alpha_equal(parse_program(print_program(program), entry.calculus), program), entry.name

    @pytest.mark.parametrize("calculus", list(Calculus))
    def test_generated_round_trip(self, calculus):
        cfg = GenConfig(calculus, seed=11)
        for index in range(250):
            program = generate(cfg, index)
            assert alpha_equal(parse_program(print_program(program), calculus), program), index

    def test_translated_round_trip(self):
        cfg = GenConfig(Calculus.REF, seed=12, max_size=20)
        for index in range(100):
            target = translate(generate(cfg, index), TranslationId.REF_TO_AC)
            assert alpha_equal(parse_program(print_program(target), Calculus.AC), target), index
