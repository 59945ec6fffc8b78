"""Command-line front end: eval, translate, trace, difftest and corpus."""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from src.config import get_fuel, get_trace_cap, get_workers
from src.difftest import (
    DEFAULT_SOURCE_FUEL,
    GenConfig,
    InvariantError,
    SuiteReport,
    corpus,
    corpus_entry,
    observation_json,
    observe,
    run_suite,
)
from src.export import summary_table, write_report
from src.logger import log_error, log_header, log_info
from src.machine import Outcome, OutcomeKind, evaluate, forward_ops, outcome_record, trace_records
from src.parser import parse_program, print_program, read_calculus_header
from src.syntax import Calculus, Computation
from src.translate import TranslationId, get_translation, resolve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BOTTOM = 2
EXIT_STUCK = 3
EXIT_FUEL = 4
EXIT_DISAGREE = 5

OUTCOME_EXIT = {
    OutcomeKind.VALUE: EXIT_OK,
    OutcomeKind.BOTTOM: EXIT_BOTTOM,
    OutcomeKind.STUCK: EXIT_STUCK,
    OutcomeKind.FUEL_EXHAUSTED: EXIT_FUEL,
}

CALCULI = [c.value for c in Calculus]


class CliError(ValueError):
    """Bad combination of arguments, reported before any work starts."""


# ============================================================================
# INPUT
# ============================================================================


def read_source(path: str) -> Tuple[str, Optional[Calculus]]:
    """Program text and the calculus it declares, for a path, ``-`` or ``corpus:NAME``."""
    if path.startswith("corpus:"):
        try:
            entry = corpus_entry(path[len("corpus:"):])
        except KeyError as exc:
            raise CliError(exc.args[0]) from exc
        return entry.source, entry.calculus
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return text, read_calculus_header(text)


def load_program(path: str, calculus: Optional[str]) -> Tuple[Computation, Calculus]:
    text, declared = read_source(path)
    chosen = Calculus(calculus) if calculus else declared
    if chosen is None:
        raise CliError(f"{path}: no calculus given; pass --calculus or add a ';; calculus: <id>' header")
    return parse_program(text, chosen), chosen


def emit_json(document: Dict[str, Any]) -> None:
    print(json.dumps(document, sort_keys=True, ensure_ascii=False))


def outcome_document(outcome: Outcome) -> Dict[str, Any]:
    document = outcome_record(outcome)
    if outcome.kind is OutcomeKind.VALUE:
        document["value_observation"] = observation_json(observe(outcome.value))
    return document


# ============================================================================
# COMMANDS
# ============================================================================


def cmd_eval(args: argparse.Namespace) -> int:
    program, calculus = load_program(args.file, args.calculus)
    if args.forward_ops:
        if calculus is not Calculus.EFF:
            raise CliError("--forward-ops only applies to eff programs")
        program = forward_ops(program)
    fuel = args.fuel if args.fuel is not None else get_fuel()
    outcome = evaluate(program, calculus, fuel, want_trace=args.trace)
    if args.json:
        document = outcome_document(outcome)
        if args.trace:
            document["trace"] = trace_records(outcome)
        emit_json(document)
    else:
        if args.trace:
            for entry in outcome.trace or ():
                print(f"{entry.index:>6} {entry.rule:<10} {entry.config.describe()}")
        print(outcome.describe())
    return OUTCOME_EXIT[outcome.kind]


def cmd_translate(args: argparse.Namespace) -> int:
    program, source = load_program(args.file, getattr(args, "from"))
    tid = resolve(source, Calculus(args.to), args.variant)
    translation = get_translation(tid)
    output = f";; calculus: {translation.target.value}\n{print_program(translation.translate(program))}\n"
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
        log_info(f"{tid.value}: wrote {args.out}")
    else:
        sys.stdout.write(output)
    return EXIT_OK


def cmd_trace(args: argparse.Namespace) -> int:
    program, calculus = load_program(args.file, args.calculus)
    fuel = args.fuel if args.fuel is not None else get_fuel()
    cap = args.max_trace if args.max_trace is not None else get_trace_cap()
    outcome = evaluate(program, calculus, fuel, want_trace=True, trace_cap=cap)
    for record in trace_records(outcome):
        print(json.dumps(record, sort_keys=True, ensure_ascii=False))
    final = outcome_document(outcome)
    final["trace_truncated"] = outcome.trace_truncated
    emit_json({"final": final})
    return OUTCOME_EXIT[outcome.kind]


def _difftest_translation(args: argparse.Namespace) -> TranslationId:
    if args.translation:
        if getattr(args, "from") or args.to or args.variant:
            raise CliError("give either --translation or --from/--to/--variant")
        return TranslationId(args.translation)
    if not getattr(args, "from") or not args.to:
        raise CliError("difftest needs --translation or both --from and --to")
    return resolve(Calculus(getattr(args, "from")), Calculus(args.to), args.variant)


def cmd_difftest(args: argparse.Namespace) -> int:
    tid = _difftest_translation(args)
    source = get_translation(tid).source
    gen = GenConfig(source, seed=args.seed, max_size=args.size)
    workers = args.workers if args.workers is not None else get_workers()
    report = run_suite(gen, tid, args.count, args.fuel, include_corpus=args.corpus, workers=workers)
    if args.out:
        write_report(report, args.out)
        log_info(f"report written to {args.out}")
    if args.json:
        emit_json({"summary": report.summary(), "items": report.records()})
    else:
        print_suite(report)
    return EXIT_DISAGREE if report.disagreements else EXIT_OK


def print_suite(report: SuiteReport) -> None:
    log_header(f"difftest {report.translation} (seed {report.seed})")
    print(summary_table(report).to_string(index=False))
    summary = report.summary()
    print(
        f"agree {summary['agree']}  disagree {summary['disagree']}  "
        f"inconclusive {summary['inconclusive']} ({summary['inconclusive_rate']:.1%})"
    )
    for item in report.disagreements:
        where = item.name if item.name is not None else f"seed {item.seed} index {item.index}"
        print(f"\nDISAGREE {where}: {item.detail}")
        print(f";; calculus: {get_translation(TranslationId(item.translation)).source.value}")
        print(item.program_text)


def cmd_corpus(args: argparse.Namespace) -> int:
    entries = corpus()
    if args.name is None or args.list:
        for entry in entries.values():
            print(f"{entry.name:<18} {entry.calculus.value:<4} {entry.expected_kind.value:<15} {entry.description}")
        return EXIT_OK
    if args.name not in entries:
        raise CliError(f"no corpus program {args.name!r}; known: {', '.join(sorted(entries))}")
    entry = entries[args.name]
    print(f";; calculus: {entry.calculus.value}")
    print(print_program(entry.program))
    return EXIT_OK


# ============================================================================
# PARSER
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctlcalc",
        description="Interpreters and translations for one-shot control calculi.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a program")
    p.add_argument("file", nargs="?", default="-", help="path, '-' for stdin, or corpus:NAME")
    p.add_argument("--calculus", choices=CALCULI, help="overrides the ';; calculus:' header")
    p.add_argument("--fuel", type=int, default=None, help="step bound (default CTLCALC_FUEL or 100000)")
    p.add_argument("--trace", action="store_true", help="print every configuration")
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--forward-ops", action="store_true", help="complete eff handlers with forwarding clauses")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("translate", help="translate a program into another calculus")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--from", choices=CALCULI, help="source calculus (default: the header)")
    p.add_argument("--to", choices=CALCULI, required=True)
    p.add_argument("--variant", choices=["naive", "counter"], help="del to ac only (default counter)")
    p.add_argument("--out", help="write here instead of stdout")
    p.set_defaults(handler=cmd_translate)

    p = sub.add_parser("trace", help="evaluate and print the trace as JSON lines")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--calculus", choices=CALCULI)
    p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--max-trace", type=int, default=None, help="entries kept (default CTLCALC_TRACE_CAP)")
    p.set_defaults(handler=cmd_trace)

    p = sub.add_parser("difftest", help="differential-test a translation on generated programs")
    p.add_argument("--translation", choices=[t.value for t in TranslationId])
    p.add_argument("--from", choices=CALCULI)
    p.add_argument("--to", choices=CALCULI)
    p.add_argument("--variant", choices=["naive", "counter"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--size", type=int, default=30, help="maximum program size in nodes")
    p.add_argument(
        "--fuel",
        type=int,
        default=DEFAULT_SOURCE_FUEL,
        help=f"source fuel (default {DEFAULT_SOURCE_FUEL}, CTLCALC_FUEL is not read); targets get fuel_policy(steps)",
    )
    p.add_argument("--workers", type=int, default=None, help="process count (default CTLCALC_WORKERS)")
    p.add_argument("--corpus", action="store_true", help="also run the corpus programs of the source calculus")
    p.add_argument("--out", help="write the report (.jsonl or .csv)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_difftest)

    p = sub.add_parser("corpus", help="list or print the built-in programs")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.set_defaults(handler=cmd_corpus)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    json_mode = getattr(args, "json", False)
    try:
        return args.handler(args)
    except (ValueError, OSError, InvariantError) as exc:
        # ParseError, CalculusError, TranslationError and CliError are all ValueErrors
        log_error(str(exc))
        if json_mode:
            emit_json({"error": str(exc)})
        return EXIT_ERROR
    except RecursionError:
        # the recursive-descent parser and JSON encoding still nest per level
        message = "input nests too deeply to process"
        log_error(message)
        if json_mode:
            emit_json({"error": message})
        return EXIT_ERROR
