"""Algebraic properties of the translations over generated programs."""

import random

import pytest

from src.difftest import GenConfig, generate
from src.syntax import Calculus, Hole, Term, Thunk, Var, alpha_equal, plug, substitute, walk
from src.translate import TranslationId, check_macro_conditions, endpoints, translate, translate_phrase

INSTANCES = 300

# binder names used inside the templates
TEMPLATE_LOCALS = ("z", "res", "k", "h", "x", "y")


def punch(t: Term, path) -> Term:
    """``t`` with the subterm at ``path`` replaced by hole 0."""
    if not path:
        return Hole(0)
    scopes = list(t.scopes())
    binders, child = scopes[path[0]]
    scopes[path[0]] = (binders, punch(child, path[1:]))
    return t.rebuild(tuple(scopes))


def source_programs(translation, count, seed, max_size=24):
    source, _ = endpoints(translation)
    cfg = GenConfig(source, seed=seed, max_size=max_size)
    return [generate(cfg, i) for i in range(count)]


@pytest.mark.parametrize("translation", list(TranslationId))
def test_substitution_commutes(translation):
    rng = random.Random(21)
    source, _ = endpoints(translation)
    closing = [generate(GenConfig(Calculus.MAM, seed=5, max_size=8), i) for i in range(20)]
    pools = [
        [Thunk(p) for p in closing],
        [Var(name) for name in TEMPLATE_LOCALS],
        [Thunk(p) for p in source_programs(translation, 20, seed=13, max_size=12)],
    ]
    checked = 0
    for program in source_programs(translation, INSTANCES * 2, seed=3):
        open_nodes = [node for _, node in walk(program) if node.free_names]
        if not open_nodes:
            continue
        node = rng.choice(open_nodes)
        name = rng.choice(sorted(node.free_names))
        value = rng.choice(pools[checked % len(pools)])
        left = translate_phrase(substitute(node, {name: value}), translation)
        right = substitute(translate_phrase(node, translation), {name: translate_phrase(value, translation)})
        assert alpha_equal(left, right), (source.value, str(node), name, str(value))
        checked += 1
        if checked == INSTANCES:
            break
    assert checked == INSTANCES


@pytest.mark.parametrize("translation", [TranslationId.EFF_TO_DEL, TranslationId.DEL_TO_EFF])
def test_plugging_commutes(translation):
    rng = random.Random(34)
    for program in source_programs(translation, INSTANCES, seed=4):
        path, sub = rng.choice(list(walk(program)))
        context = punch(program, path)
        direct = translate_phrase(program, translation)
        plugged = plug(translate_phrase(context, translation), translate_phrase(sub, translation))
        assert alpha_equal(direct, plugged), (str(program), path)


@pytest.mark.parametrize("translation", list(TranslationId))
def test_core_programs_are_fixed_points(translation):
    cfg = GenConfig(Calculus.MAM, seed=6, max_size=30)
    for i in range(INSTANCES):
        program = generate(cfg, i)
        assert translate(program, translation) == program


@pytest.mark.parametrize("translation", list(TranslationId))
def test_generated_programs_satisfy_macro_conditions(translation):
    for program in source_programs(translation, INSTANCES, seed=8, max_size=18):
        report = check_macro_conditions(translation, program)
        assert report.ok, (str(program), report.violations)
