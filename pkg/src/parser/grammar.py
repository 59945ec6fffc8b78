"""Recursive-descent parser and printer for programs and phrases."""

from typing import Dict, List, Optional, Tuple

from src.syntax import (
    Abs,
    App,
    Calculus,
    CalculusError,
    CaseClause,
    Computation,
    CPair,
    Create,
    Dollar,
    Force,
    Handle,
    Handler,
    Hole,
    Inj,
    Label,
    Labeled,
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
    Term,
    Throw,
    Thunk,
    Unit,
    Value,
    Var,
    Yield,
    nat,
    pretty,
    require_calculus,
    walk,
)

from .lexer import ParseError, Token, read_calculus_header, tokenize

VALUE_FORMS = ("pair", "inj", "thunk", "nat")

COMPUTATION_FORMS = {
    "pcase": PCase,
    "case": SCase,
    "force": Force,
    "return": Return,
    "let": Seq,
    "lam": Abs,
    "app": App,
    "cpair": CPair,
    "prj": Prj,
    "shift0": Shift0,
    "dollar": Dollar,
    "throw": Throw,
    "create": Create,
    "resume": Resume,
    "yield": Yield,
    "op": OpCall,
    "handle": Handle,
    "ref": RefCreate,
    "set!": RefSet,
    "get": RefGet,
}


class ProgramPrintError(ValueError):
    """Raised when printing a term that is not a label-free program."""


def forms_of(calculus: Optional[Calculus]) -> List[str]:
    return sorted(
        name for name, cls in COMPUTATION_FORMS.items() if calculus is None or calculus in cls.calculi
    )


class _Parser:
    def __init__(self, text: str, calculus: Optional[Calculus], phrase: bool):
        self.tokens = tokenize(text)
        self.pos = 0
        self.calculus = calculus
        self.phrase = phrase
        self.bound: Dict[str, int] = {}

    # ------------------------------------------------------------------ tokens

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, tok: Token, message: str, expected=()) -> ParseError:
        return ParseError(tok.line, tok.column, message, expected)

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.fail(tok, f"unexpected {found!r}", {what})
        return self.advance()

    def keyword(self, word: str) -> None:
        tok = self.peek()
        if tok.kind != "ident" or tok.text != word:
            raise self.fail(tok, f"unexpected {tok.text or 'end of input'!r}", {word})
        self.advance()

    def name(self, what: str = "identifier") -> str:
        tok = self.expect("ident", what)
        if tok.text.startswith("$") and not self.phrase:
            raise self.fail(tok, f"template parameter {tok.text} in a program")
        return tok.text

    def number(self) -> int:
        return int(self.expect("num", "number").text)

    # ------------------------------------------------------------------ scopes

    def bind(self, *names: str) -> None:
        for n in names:
            self.bound[n] = self.bound.get(n, 0) + 1

    def unbind(self, *names: str) -> None:
        for n in names:
            self.bound[n] -= 1
            if not self.bound[n]:
                del self.bound[n]

    def scoped(self, names: Tuple[str, ...], tok: Token) -> Computation:
        if len(set(names)) != len(names):
            raise self.fail(tok, f"duplicate binder in {' '.join(names)}")
        self.bind(*names)
        try:
            return self.computation()
        finally:
            self.unbind(*names)

    # ------------------------------------------------------------------ values

    def value(self) -> Value:
        tok = self.peek()
        if tok.kind == "ident":
            name = self.name()
            if not self.phrase and name not in self.bound:
                raise self.fail(tok, f"unbound variable {name}")
            return Var(name)
        if tok.kind == "hole" and self.phrase:
            self.advance()
            return Hole(int(tok.text[1:]))
        if tok.kind != "lparen":
            raise self.fail(tok, f"unexpected {tok.text or 'end of input'!r}", {"identifier", "("})
        self.advance()
        head = self.peek()
        if head.kind == "rparen":
            self.advance()
            return Unit()
        if head.kind != "ident" or head.text not in VALUE_FORMS:
            raise self.fail(head, f"{head.text or 'end of input'!r} does not start a value", (")",) + VALUE_FORMS)
        self.advance()
        if head.text == "pair":
            result: Value = Pair(self.value(), self.value())
        elif head.text == "inj":
            tag = self.name("tag")
            result = Inj(tag, self.value())
        elif head.text == "thunk":
            result = Thunk(self.computation())
        else:
            result = nat(self.number())
        self.expect("rparen", ")")
        return result

    # ------------------------------------------------------------------ computations

    def computation(self) -> Computation:
        tok = self.peek()
        if tok.kind == "hole" and self.phrase:
            self.advance()
            return Hole(int(tok.text[1:]))
        allowed = forms_of(self.calculus)
        if tok.kind != "lparen":
            raise self.fail(tok, f"unexpected {tok.text or 'end of input'!r}", {"("})
        self.advance()
        head = self.peek()
        if head.kind != "ident" or head.text not in COMPUTATION_FORMS:
            raise self.fail(head, f"{head.text or 'end of input'!r} does not start a computation", allowed)
        cls = COMPUTATION_FORMS[head.text]
        if self.calculus is not None and self.calculus not in cls.calculi:
            raise self.fail(head, f"{head.text} is not part of calculus {self.calculus.value}", allowed)
        self.advance()
        result = getattr(self, "form_" + head.text.rstrip("!"))(head)
        self.expect("rparen", ")")
        return result

    def form_pcase(self, tok: Token) -> Computation:
        scrutinee = self.value()
        self.expect("lparen", "(")
        first, second = self.name(), self.name()
        self.expect("rparen", ")")
        return PCase(scrutinee, first, second, self.scoped((first, second), tok))

    def form_case(self, tok: Token) -> Computation:
        scrutinee = self.value()
        clauses = []
        while self.peek().kind == "lparen":
            self.advance()
            tag_tok = self.peek()
            tag = self.name("tag")
            if any(c.tag == tag for c in clauses):
                raise self.fail(tag_tok, f"duplicate case tag {tag}")
            binder = self.name()
            clauses.append(CaseClause(tag, binder, self.scoped((binder,), tok)))
            self.expect("rparen", ")")
        return SCase(scrutinee, tuple(clauses))

    def form_force(self, tok: Token) -> Computation:
        return Force(self.value())

    def form_return(self, tok: Token) -> Computation:
        return Return(self.value())

    def form_let(self, tok: Token) -> Computation:
        binder = self.name()
        first = self.computation()
        return Seq(binder, first, self.scoped((binder,), tok))

    def form_lam(self, tok: Token) -> Computation:
        binder = self.name()
        return Abs(binder, self.scoped((binder,), tok))

    def form_app(self, tok: Token) -> Computation:
        fn = self.computation()
        return App(fn, self.value())

    def form_cpair(self, tok: Token) -> Computation:
        return CPair(self.computation(), self.computation())

    def form_prj(self, tok: Token) -> Computation:
        index_tok = self.peek()
        index = self.number()
        if index not in (1, 2):
            raise self.fail(index_tok, f"projection index {index}", {"1", "2"})
        return Prj(index, self.computation())

    def form_shift0(self, tok: Token) -> Computation:
        binder = self.name()
        return Shift0(binder, self.scoped((binder,), tok))

    def form_dollar(self, tok: Token) -> Computation:
        body = self.computation()
        binder = self.name()
        return Dollar(body, binder, self.scoped((binder,), tok))

    def form_throw(self, tok: Token) -> Computation:
        return Throw(self.value(), self.value())

    def form_create(self, tok: Token) -> Computation:
        return Create(self.value())

    def form_resume(self, tok: Token) -> Computation:
        return Resume(self.value(), self.value())

    def form_yield(self, tok: Token) -> Computation:
        return Yield(self.value())

    def form_op(self, tok: Token) -> Computation:
        op = self.name("operation name")
        return OpCall(op, self.value())

    def form_handle(self, tok: Token) -> Computation:
        handler = self.handler()
        return Handle(handler, self.computation())

    def form_ref(self, tok: Token) -> Computation:
        return RefCreate(self.value())

    def form_set(self, tok: Token) -> Computation:
        return RefSet(self.value(), self.value())

    def form_get(self, tok: Token) -> Computation:
        return RefGet(self.value())

    def handler(self) -> Handler:
        self.expect("lparen", "(")
        self.keyword("handler")
        self.expect("lparen", "(")
        ret_tok = self.peek()
        self.keyword("ret")
        ret_binder = self.name()
        ret_body = self.scoped((ret_binder,), ret_tok)
        self.expect("rparen", ")")
        clauses: List[OpClause] = []
        while self.peek().kind == "lparen":
            self.advance()
            on_tok = self.peek()
            self.keyword("on")
            op_tok = self.peek()
            op = self.name("operation name")
            if any(c.op == op for c in clauses):
                raise self.fail(op_tok, f"duplicate handler clause for {op}")
            param, cont = self.name(), self.name()
            clauses.append(OpClause(op, param, cont, self.scoped((param, cont), on_tok)))
            self.expect("rparen", ")")
        self.expect("rparen", ")")
        return Handler(ret_binder, ret_body, tuple(clauses))

    def finish(self, result: Term) -> Term:
        self.expect("eof", "end of input")
        return result


def parse_program(text: str, calculus: Optional[Calculus] = None) -> Computation:
    """Parse a closed, label-free program of ``calculus``.

    When ``calculus`` is omitted the ``;; calculus: <id>`` header decides.
    """
    header = read_calculus_header(text)
    chosen = Calculus(calculus) if calculus is not None else header
    if chosen is None:
        raise ParseError(1, 1, "no calculus given", [f";; calculus: {c.value}" for c in Calculus])
    parser = _Parser(text, chosen, phrase=False)
    program = parser.finish(parser.computation())
    try:
        require_calculus(program, chosen, require_program=True)
    except CalculusError as exc:
        raise ParseError(1, 1, str(exc)) from exc
    return program


def parse_phrase(text: str, calculus: Optional[Calculus] = None, sort: str = "computation") -> Term:
    """Parse an open phrase; ``?n`` denotes hole ``n``. Used for contexts and templates."""
    parser = _Parser(text, Calculus(calculus) if calculus is not None else None, phrase=True)
    result = parser.value() if sort == "value" else parser.computation()
    return parser.finish(result)


def print_program(t: Term) -> str:
    for _, node in walk(t):
        if isinstance(node, (Label, Labeled, Hole)):
            raise ProgramPrintError(f"cannot print runtime form {pretty(node)} as program text")
    return pretty(t)
