"""Structural checks that a translation is a macro-translation on a given program."""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from src.syntax import (
    ALL_CALCULI,
    App,
    Hole,
    Prj,
    Seq,
    Term,
    alpha_equal,
    check_calculus,
    pretty,
    walk,
)

from .base import Translation, binder_params
from .registry import TranslationId, get_translation
from .template import instantiate, param


@dataclass(frozen=True)
class ConditionViolation:
    condition: int
    path: Tuple[int, ...]
    constructor: str
    detail: str


@dataclass
class MacroReport:
    translation: str
    violations: List[ConditionViolation] = field(default_factory=list)
    nodes_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def abstract_node(node: Term) -> Term:
    """The node with its i-th child replaced by hole i and its j-th binder renamed ``$j``."""
    scopes = []
    j = 0
    for i, (binders, _) in enumerate(node.scopes()):
        names = []
        for _ in binders:
            names.append(param(j))
            j += 1
        scopes.append((tuple(names), Hole(i)))
    return node.rebuild(tuple(scopes))


def check_macro_conditions(translation_id, program: Term) -> MacroReport:
    """Check (1) the output is a target program, (2) core constructors translate
    homomorphically, (3) every occurrence of a replaced constructor instantiates
    one template, extracted once per constructor and matched everywhere."""
    translator = (
        translation_id if isinstance(translation_id, Translation) else get_translation(TranslationId(translation_id))
    )
    report = MacroReport(translator.name)

    output = translator.phrase(program)
    violation = check_calculus(output, translator.target, require_program=True)
    if violation is not None:
        report.violations.append(ConditionViolation(1, violation.path, violation.constructor, violation.reason))

    templates: Dict[Tuple[type, tuple], Term] = {}
    for path, node in walk(program):
        report.nodes_checked += 1
        translated = translator.phrase(node)
        children = [(binders, translator.phrase(child)) for binders, child in node.scopes()]
        if node.calculi == ALL_CALCULI:
            expected = node.rebuild(tuple(children))
            if not alpha_equal(translated, expected):
                report.violations.append(
                    ConditionViolation(2, path, node.constructor, f"not homomorphic: {pretty(translated)}")
                )
            continue
        key = (type(node), node.head())
        if key not in templates:
            templates[key] = translator.phrase(abstract_node(node))
        fillers = {i: child for i, (_, child) in enumerate(children)}
        expected = instantiate(templates[key], fillers, binder_params(node))
        if not alpha_equal(translated, expected):
            report.violations.append(
                ConditionViolation(3, path, node.constructor, "occurrence does not match the extracted template")
            )
    return report


def is_pure_context(t: Term) -> bool:
    """One-hole context whose hole sits under let, application and projection frames only."""
    while True:
        if isinstance(t, Hole):
            return True
        if isinstance(t, Seq) and not t.body.has_holes:
            t = t.first
        elif isinstance(t, App) and not t.arg.has_holes:
            t = t.fn
        elif isinstance(t, Prj):
            t = t.body
        else:
            return False


def maps_frames_to_frames(translation_id, frame: Term) -> bool:
    """Whether the translation of a pure frame (a context with one hole) is a pure context."""
    return is_pure_context(get_translation(TranslationId(translation_id)).phrase(frame))
