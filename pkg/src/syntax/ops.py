"""Free variables, capture-avoiding substitution, alpha-equivalence and plugging."""

from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, NamedTuple, Set, Tuple, Union

from .terms import Hole, Label, Term, Value, Var

Path = Tuple[int, ...]


def free_vars(t: Term) -> FrozenSet[str]:
    return t.free_names


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """``base`` itself, else the first of ``base'``, ``base''``, ... not in ``avoid``."""
    taken = set(avoid)
    candidate = base
    while candidate in taken:
        candidate += "'"
    return candidate


def walk(t: Term, path: Path = ()) -> Iterator[Tuple[Path, Term]]:
    """Pre-order traversal yielding ``(path, subterm)``; paths index into ``scopes()``."""
    stack = [(path, t)]
    while stack:
        where, node = stack.pop()
        yield where, node
        children = [(where + (i,), child) for i, (_, child) in enumerate(node.scopes())]
        stack.extend(reversed(children))


def subterm_at(t: Term, path: Path) -> Term:
    for i in path:
        t = t.scopes()[i][1]
    return t


def size(t: Term) -> int:
    return sum(1 for _ in walk(t))


def labels_in(t: Term) -> Set[Label]:
    return set(t.labels)


def bound_names(t: Term) -> Set[str]:
    names: Set[str] = set()
    for _, node in walk(t):
        for binders, _ in node.scopes():
            names.update(binders)
    return names


# ============================================================================
# SUBSTITUTION
# ============================================================================


def substitute(t: Term, bindings: Mapping[str, Value]) -> Term:
    """Simultaneous capture-avoiding substitution ``t[V1/x1, ..., Vn/xn]``.

    Binders are renamed only when they would capture a free variable of an
    incoming value; untouched subtrees are shared with the input.
    """
    if not bindings:
        return t
    return _subst(t, dict(bindings))


class _Rebuild(NamedTuple):
    node: Term
    # (binders, original child, whether the child was substituted into)
    plan: List[Tuple[Tuple[str, ...], Term, bool]]


def _subst(t: Term, bindings: Dict[str, Value]) -> Term:
    done: List[Term] = []
    stack: List[Union[Tuple[Term, Dict[str, Value]], _Rebuild]] = [(t, bindings)]
    while stack:
        task = stack.pop()
        if isinstance(task, _Rebuild):
            pending = sum(1 for *_, changed in task.plan if changed)
            children = iter(done[len(done) - pending:])
            del done[len(done) - pending:]
            done.append(
                task.node.rebuild(
                    tuple((b, next(children) if changed else c) for b, c, changed in task.plan)
                )
            )
            continue
        node, env = task
        live = {name: v for name, v in env.items() if name in node.free_names}
        if not live:
            done.append(node)
            continue
        if isinstance(node, Var):
            done.append(live[node.name])
            continue
        plan, jobs = [], []
        for binders, child in node.scopes():
            inner = {
                name: v
                for name, v in live.items()
                if name not in binders and name in child.free_names
            }
            if not inner:
                plan.append((binders, child, False))
                continue
            incoming = set().union(*(v.free_names for v in inner.values()))
            if incoming.intersection(binders):
                avoid = incoming | child.free_names | set(binders) | set(inner)
                renamed = []
                for b in binders:
                    if b in incoming:
                        nb = fresh_name(b, avoid)
                        avoid.add(nb)
                        inner[b] = Var(nb)
                        renamed.append(nb)
                    else:
                        renamed.append(b)
                binders = tuple(renamed)
            plan.append((binders, child, True))
            jobs.append((child, inner))
        stack.append(_Rebuild(node, plan))
        stack.extend(reversed(jobs))
    return done[0]


def rename_free(t: Term, renaming: Mapping[str, str]) -> Term:
    return substitute(t, {old: Var(new) for old, new in renaming.items() if old != new})


# ============================================================================
# ALPHA-EQUIVALENCE
# ============================================================================


def alpha_equal(t1: Term, t2: Term) -> bool:
    """Equality up to consistent renaming of bound names; labels compare by id."""
    stack = [(t1, t2, {}, {}, 0)]
    while stack:
        a, b, env_a, env_b, depth = stack.pop()
        if not _alpha_node(a, b, env_a, env_b, depth, stack):
            return False
    return True


def _alpha_node(
    a: Term, b: Term, env_a: Dict[str, int], env_b: Dict[str, int], depth: int, stack: list
) -> bool:
    """Compare one pair of nodes and queue their children with extended environments."""
    a, b = a.canonical(), b.canonical()
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        level_a, level_b = env_a.get(a.name), env_b.get(b.name)
        if level_a is None and level_b is None:
            return a.name == b.name
        return level_a == level_b
    if a.head() != b.head():
        return False
    scopes_a, scopes_b = a.scopes(), b.scopes()
    if len(scopes_a) != len(scopes_b):
        return False
    for (binders_a, child_a), (binders_b, child_b) in zip(scopes_a, scopes_b):
        if len(binders_a) != len(binders_b):
            return False
        inner_a, inner_b, level = env_a, env_b, depth
        if binders_a:
            inner_a, inner_b = dict(env_a), dict(env_b)
            for x, y in zip(binders_a, binders_b):
                inner_a[x] = level
                inner_b[y] = level
                level += 1
        stack.append((child_a, child_b, inner_a, inner_b, level))
    return True


# ============================================================================
# CONTEXTS
# ============================================================================


def plug(context: Term, filling: Union[Term, Mapping[int, Term]]) -> Term:
    """Fill holes of ``context``. Plugging may capture, like context application."""
    fills = filling if isinstance(filling, Mapping) else None

    done: List[Term] = []
    stack: List[Tuple[Term, bool]] = [(context, False)]
    while stack:
        node, ready = stack.pop()
        if isinstance(node, Hole):
            done.append(filling if fills is None else fills.get(node.index, node))
            continue
        if not node.has_holes:
            done.append(node)
            continue
        scopes = node.scopes()
        if not ready:
            stack.append((node, True))
            stack.extend((child, False) for _, child in reversed(scopes))
            continue
        children = done[len(done) - len(scopes):]
        del done[len(done) - len(scopes):]
        done.append(node.rebuild(tuple((b, c) for (b, _), c in zip(scopes, children))))
    return done[0]
