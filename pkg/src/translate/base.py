"""Macro-translations: homomorphic on shared constructors, templates everywhere else."""

from typing import Dict, List, Optional, Tuple

from src.syntax import Calculus, CalculusError, Computation, Term, require_calculus

from .template import instantiate, param, template_term


class TranslationError(ValueError):
    """The input is not a label-free program the translation accepts."""


def binder_params(node: Term) -> Dict[str, str]:
    """``{"$0": b0, "$1": b1, ...}`` over the node's binders in scope order."""
    names = [b for binders, _ in node.scopes() for b in binders]
    return {param(j): name for j, name in enumerate(names)}


class Translation:
    """A translation from ``source`` to ``target``.

    Subclasses override ``template_text`` for the constructors they replace; every
    other constructor, including every core constructor, is mapped homomorphically.
    """

    name = "translation"
    source: Calculus
    target: Calculus

    def __init__(self):
        self._templates: Dict[Tuple[type, tuple], Optional[Term]] = {}

    def template_text(self, node: Term) -> Optional[str]:
        return None

    def template(self, node: Term) -> Optional[Term]:
        key = (type(node), node.head())
        if key not in self._templates:
            text = self.template_text(node)
            sort = "computation" if isinstance(node, Computation) else "value"
            self._templates[key] = None if text is None else template_term(text, self.target, sort)
        return self._templates[key]

    def phrase(self, t: Term) -> Term:
        """Translate an open phrase or context; holes map to holes."""
        done: List[Term] = []
        stack: List[Tuple[Term, bool]] = [(t, False)]
        while stack:
            node, ready = stack.pop()
            scopes = node.scopes()
            if not ready:
                stack.append((node, True))
                stack.extend((child, False) for _, child in reversed(scopes))
                continue
            # translated children sit on top of ``done`` in scope order
            children = done[len(done) - len(scopes):]
            del done[len(done) - len(scopes):]
            template = self.template(node)
            if template is None:
                done.append(node.rebuild(tuple((b, c) for (b, _), c in zip(scopes, children))))
            else:
                done.append(instantiate(template, dict(enumerate(children)), binder_params(node)))
        return done[0]

    def validate(self, program: Term) -> None:
        try:
            require_calculus(program, self.source, require_program=True)
        except CalculusError as exc:
            raise TranslationError(f"{self.name}: {exc}") from exc

    def translate(self, program: Term) -> Term:
        self.validate(program)
        return self.phrase(program)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}: {self.source.value} -> {self.target.value}>"


class ComposedTranslation(Translation):
    """``second ∘ first``, applied literally one after the other."""

    def __init__(self, name: str, first: Translation, second: Translation):
        super().__init__()
        if first.target is not second.source:
            raise ValueError(f"cannot compose {first.name} with {second.name}")
        self.name = name
        self.first = first
        self.second = second
        self.source = first.source
        self.target = second.target

    def phrase(self, t: Term) -> Term:
        return self.second.phrase(self.first.phrase(t))

    def validate(self, program: Term) -> None:
        self.first.validate(program)
