"""Seeded random generation of closed source programs.

Programs are built top-down against a node budget. Control operators are only
placed where they are meaningful in the source calculus. ``shift0`` appears only
inside a ``dollar`` body and ``op`` only under a handler that covers it; neither
is ever placed under a thunk. The same holds for ``yield``, which only appears in
the body of a coroutine passed to ``create``. Continuation variables only ever
occur as the target of ``throw`` and coroutine variables only as the target of
``resume``.
"""

import random
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from src.syntax import (
    Abs,
    App,
    Calculus,
    CaseClause,
    Computation,
    CPair,
    Create,
    Dollar,
    Force,
    Handle,
    Handler,
    Inj,
    OpCall,
    OpClause,
    Pair,
    PCase,
    Prj,
    RefCreate,
    RefGet,
    RefSet,
    Resume,
    Return,
    SCase,
    Seq,
    Shift0,
    Throw,
    Thunk,
    Unit,
    Value,
    Var,
    Yield,
)

DATA, THUNK, FN, CONT, REF, CO = "data", "thunk", "fn", "cont", "ref", "co"

TAGS = ("A", "B")

DEFAULT_WEIGHTS: Dict[str, float] = {
    "return": 3.0,
    "let": 3.0,
    "app": 1.5,
    "force": 1.5,
    "bind_thunk": 1.0,
    "bind_fn": 1.0,
    "pcase": 1.0,
    "case": 1.5,
    "prj": 0.5,
}

# ~40% of the mass when the calculus offers them
CONTROL_WEIGHTS: Dict[Calculus, Dict[str, float]] = {
    Calculus.DEL: {"dollar": 3.0, "shift0": 3.0, "throw": 3.0},
    Calculus.EFF: {"handle": 3.0, "op": 3.5, "throw": 2.5},
    Calculus.REF: {"ref": 3.0, "get": 3.0, "set": 3.0},
    Calculus.AC: {"create": 3.0, "resume": 3.5, "yield": 2.5},
    Calculus.MAM: {},
}

MIN_COST = {
    "return": 2,
    "let": 5,
    "app": 5,
    "force": 2,
    "bind_thunk": 7,
    "bind_fn": 8,
    "pcase": 6,
    "case": 7,
    "prj": 6,
    "dollar": 5,
    "shift0": 3,
    "throw": 3,
    "op": 2,
    "handle": 6,
    "ref": 5,
    "get": 2,
    "set": 3,
    "create": 8,
    "resume": 3,
    "yield": 2,
}

BINDING_FORMS = {"let", "app", "bind_thunk", "bind_fn", "pcase", "case", "dollar", "shift0", "handle", "ref", "create"}


@dataclass(frozen=True)
class GenConfig:
    calculus: Calculus
    seed: int = 0
    max_size: int = 30
    binder_depth_cap: int = 8
    op_name_pool: Tuple[str, ...] = ("E", "F")
    weights: Mapping[str, float] = field(default_factory=dict)
    pure_fraction: float = 0.1


Scope = Tuple[Tuple[str, str], ...]


def program_rng(seed: int, index: int) -> random.Random:
    return random.Random((seed << 32) ^ index)


class _Builder:
    def __init__(self, cfg: GenConfig, rng: random.Random, pure: bool):
        self.cfg = cfg
        self.rng = rng
        self.calculus = Calculus.MAM if pure else Calculus(cfg.calculus)
        self.ops: Tuple[str, ...] = tuple(cfg.op_name_pool)
        self.counter = 0
        weights = dict(DEFAULT_WEIGHTS)
        weights.update(CONTROL_WEIGHTS[self.calculus])
        weights.update({k: v for k, v in cfg.weights.items() if k in weights})
        self.weights = weights

    # ------------------------------------------------------------------ names

    def fresh(self, kind: str) -> str:
        self.counter += 1
        return f"{'k' if kind == CONT else 'v'}{self.counter}"

    def pick(self, options: Sequence):
        return options[self.rng.randrange(len(options))]

    def split(self, total: int, minimums: Sequence[int]) -> List[int]:
        """Random parts summing to at most ``total``, each at least its minimum."""
        parts = list(minimums)
        spare = total - sum(parts)
        for _ in range(max(spare, 0)):
            parts[self.rng.randrange(len(parts))] += 1
        return parts

    @staticmethod
    def of_kind(scope: Scope, kind: str) -> List[str]:
        return [name for name, k in scope if k == kind]

    # ------------------------------------------------------------------ values

    def value(self, budget: int, scope: Scope) -> Value:
        data = self.of_kind(scope, DATA)
        options = [("unit", 3.0)]
        if data:
            options.append(("var", 4.0))
        if budget >= 2:
            options.append(("inj", 2.0))
        if budget >= 3:
            options.append(("pair", 2.0))
            options.append(("thunk", 0.5))
        names, weights = zip(*options)
        choice = self.rng.choices(names, weights=weights)[0]
        if choice == "unit":
            return Unit()
        if choice == "var":
            return Var(self.pick(data))
        if choice == "inj":
            return Inj(self.pick(TAGS), self.value(budget - 1, scope))
        if choice == "pair":
            a, b = self.split(budget - 1, [1, 1])
            return Pair(self.value(a, scope), self.value(b, scope))
        # a thunk body runs wherever it is forced, so no control inside it
        return Thunk(self.computation(budget - 1, scope, depth=0))

    # ------------------------------------------------------------- computations

    def feasible(self, form: str, budget: int, scope: Scope, depth: int) -> bool:
        if budget < MIN_COST[form]:
            return False
        if form in BINDING_FORMS and len(scope) >= self.cfg.binder_depth_cap:
            return False
        if form == "force":
            return bool(self.of_kind(scope, THUNK)) or (budget >= 4 and bool(self.of_kind(scope, FN)))
        if form in ("shift0", "op", "yield"):
            return depth > 0
        if form == "throw":
            return bool(self.of_kind(scope, CONT))
        if form in ("get", "set"):
            return bool(self.of_kind(scope, REF))
        if form == "resume":
            return bool(self.of_kind(scope, CO))
        return True

    def computation(self, budget: int, scope: Scope, depth: int) -> Computation:
        """A computation of at most ``budget`` nodes.

        ``depth`` counts the enclosing delimiters (dollars, handlers or coroutine
        bodies) that are not hidden behind a thunk.
        """
        if budget <= 2:
            return Return(self.value(1, scope)) if budget == 2 else Return(Unit())
        forms = [(f, w) for f, w in self.weights.items() if w > 0 and self.feasible(f, budget, scope, depth)]
        if not forms:
            return Return(self.value(budget - 1, scope))
        names, weights = zip(*forms)
        form = self.rng.choices(names, weights=weights)[0]
        return getattr(self, f"form_{form}")(budget, scope, depth)

    def form_return(self, budget, scope, depth):
        return Return(self.value(budget - 1, scope))

    def form_let(self, budget, scope, depth):
        a, b = self.split(budget - 1, [2, 2])
        x = self.fresh(DATA)
        return Seq(x, self.computation(a, scope, depth), self.computation(b, scope + ((x, DATA),), depth))

    def form_app(self, budget, scope, depth):
        body, arg = self.split(budget - 2, [2, 1])
        x = self.fresh(DATA)
        return App(Abs(x, self.computation(body, scope + ((x, DATA),), depth)), self.value(arg, scope))

    def form_force(self, budget, scope, depth):
        thunks, fns = self.of_kind(scope, THUNK), self.of_kind(scope, FN)
        if fns and (not thunks or self.rng.random() < 0.5) and budget >= 4:
            return App(Force(Var(self.pick(fns))), self.value(budget - 3, scope))
        return Force(Var(self.pick(thunks)))

    def form_bind_thunk(self, budget, scope, depth):
        body, rest = self.split(budget - 3, [2, 2])
        t = self.fresh(THUNK)
        bound = Return(Thunk(self.computation(body, scope, 0)))
        return Seq(t, bound, self.computation(rest, scope + ((t, THUNK),), depth))

    def form_bind_fn(self, budget, scope, depth):
        body, rest = self.split(budget - 4, [2, 2])
        f, x = self.fresh(FN), self.fresh(DATA)
        bound = Return(Thunk(Abs(x, self.computation(body, scope + ((x, DATA),), 0))))
        return Seq(f, bound, self.computation(rest, scope + ((f, FN),), depth))

    def scrutinee(self, budget: int, scope: Scope, shape: str) -> Value:
        data = self.of_kind(scope, DATA)
        if data and self.rng.random() < 0.3:
            return Var(self.pick(data))
        if shape == "pair":
            a, b = self.split(budget - 1, [1, 1])
            return Pair(self.value(a, scope), self.value(b, scope))
        return Inj(self.pick(TAGS), self.value(budget - 1, scope))

    def form_pcase(self, budget, scope, depth):
        scrut, body = self.split(budget - 1, [3, 2])
        a, b = self.fresh(DATA), self.fresh(DATA)
        return PCase(
            self.scrutinee(scrut, scope, "pair"),
            a,
            b,
            self.computation(body, scope + ((a, DATA), (b, DATA)), depth),
        )

    def form_case(self, budget, scope, depth):
        scrut, left, right = self.split(budget - 1, [2, 2, 2])
        clauses = []
        for tag, share in zip(TAGS, (left, right)):
            x = self.fresh(DATA)
            clauses.append(CaseClause(tag, x, self.computation(share, scope + ((x, DATA),), depth)))
        return SCase(self.scrutinee(scrut, scope, "inj"), tuple(clauses))

    def form_prj(self, budget, scope, depth):
        a, b = self.split(budget - 2, [2, 2])
        return Prj(self.rng.choice((1, 2)), CPair(self.computation(a, scope, depth), self.computation(b, scope, depth)))

    def form_dollar(self, budget, scope, depth):
        body, ret = self.split(budget - 1, [2, 2])
        x = self.fresh(DATA)
        return Dollar(self.computation(body, scope, depth + 1), x, self.computation(ret, scope + ((x, DATA),), depth))

    def form_shift0(self, budget, scope, depth):
        k = self.fresh(CONT)
        # the body runs outside the delimiter it captured
        return Shift0(k, self.computation(budget - 1, scope + ((k, CONT),), depth - 1))

    def form_throw(self, budget, scope, depth):
        return Throw(Var(self.pick(self.of_kind(scope, CONT))), self.value(budget - 2, scope))

    def form_op(self, budget, scope, depth):
        return OpCall(self.pick(self.ops), self.value(budget - 1, scope))

    def form_handle(self, budget, scope, depth):
        minimums = [2, 2] + [2] * len(self.ops)
        if budget - 1 < sum(minimums):
            return Return(self.value(budget - 1, scope))
        body, ret, *clause_budgets = self.split(budget - 1, minimums)
        x = self.fresh(DATA)
        clauses = []
        for op, share in zip(self.ops, clause_budgets):
            p, k = self.fresh(DATA), self.fresh(CONT)
            clauses.append(OpClause(op, p, k, self.computation(share, scope + ((p, DATA), (k, CONT)), depth)))
        handler = Handler(x, self.computation(ret, scope + ((x, DATA),), depth), tuple(clauses))
        return Handle(handler, self.computation(body, scope, depth + 1))

    def form_ref(self, budget, scope, depth):
        init, rest = self.split(budget - 2, [1, 2])
        r = self.fresh(REF)
        return Seq(r, RefCreate(self.value(init, scope)), self.computation(rest, scope + ((r, REF),), depth))

    def form_get(self, budget, scope, depth):
        return RefGet(Var(self.pick(self.of_kind(scope, REF))))

    def form_set(self, budget, scope, depth):
        return RefSet(Var(self.pick(self.of_kind(scope, REF))), self.value(budget - 2, scope))

    def form_create(self, budget, scope, depth):
        body, rest = self.split(budget - 4, [2, 2])
        c, x = self.fresh(CO), self.fresh(DATA)
        # yields in the body suspend this coroutine, wherever it is resumed from
        routine = Thunk(Abs(x, self.computation(body, scope + ((x, DATA),), 1)))
        return Seq(c, Create(routine), self.computation(rest, scope + ((c, CO),), depth))

    def form_resume(self, budget, scope, depth):
        return Resume(Var(self.pick(self.of_kind(scope, CO))), self.value(budget - 2, scope))

    def form_yield(self, budget, scope, depth):
        return Yield(self.value(budget - 1, scope))

    # ------------------------------------------------------------------ program

    def program(self, budget: int) -> Computation:
        if self.calculus is Calculus.EFF:
            return self.effect_program(budget)
        return self.computation(budget, (), 0)

    def effect_program(self, budget: int) -> Computation:
        """Body wrapped in a top-level handler that resumes every operation with its argument."""
        outer = 1 + 2 + 3 * len(self.ops)
        if budget - outer < 2:
            return self.computation(budget, (), 0)
        body = self.computation(budget - outer, (), 1)
        x = self.fresh(DATA)
        clauses = []
        for op in self.ops:
            p, k = self.fresh(DATA), self.fresh(CONT)
            clauses.append(OpClause(op, p, k, Throw(Var(k), Var(p))))
        return Handle(Handler(x, Return(Var(x)), tuple(clauses)), body)


def generate(cfg: GenConfig, index: int) -> Computation:
    """The ``index``-th program of the seeded stream ``cfg``; closed, label-free and at most ``max_size`` nodes."""
    rng = program_rng(cfg.seed, index)
    if cfg.max_size <= 2:
        return Return(Unit())
    pure = Calculus(cfg.calculus) is not Calculus.MAM and rng.random() < cfg.pure_fraction
    builder = _Builder(cfg, rng, pure)
    budget = rng.randint(max(2, cfg.max_size // 3), cfg.max_size)
    return builder.program(budget)


def generate_many(cfg: GenConfig, count: int, start: int = 0) -> List[Computation]:
    return [generate(cfg, index) for index in range(start, start + count)]
