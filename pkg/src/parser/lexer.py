"""Tokenizer for the s-expression surface syntax."""

import bisect
import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional

from src.syntax import Calculus

TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>;[^\n]*)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<hole>\?[0-9]+)
  | (?P<label>\#[A-Za-z0-9_]*)
  | (?P<num>[0-9]+(?![A-Za-z_'!$-]))
  | (?P<ident>[A-Za-z_$][A-Za-z0-9_'!$-]*)
    """,
    re.VERBOSE,
)

HEADER_RE = re.compile(r"\A\s*;;[ \t]*calculus[ \t]*:[ \t]*([A-Za-z]+)")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str, expected: Iterable[str] = ()):
        self.line = line
        self.column = column
        self.message = message
        self.expected: FrozenSet[str] = frozenset(expected)
        detail = f"{line}:{column}: {message}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(detail)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    line_starts = [0] + [i + 1 for i, ch in enumerate(text) if ch == "\n"]

    def position(offset: int):
        line = bisect.bisect_right(line_starts, offset)
        return line, offset - line_starts[line - 1] + 1

    tokens: List[Token] = []
    offset = 0
    while offset < len(text):
        match = TOKEN_RE.match(text, offset)
        if match is None:
            line, column = position(offset)
            raise ParseError(
                line, column, f"unexpected character {text[offset]!r}", {"(", ")", "identifier"}
            )
        kind = match.lastgroup
        if kind == "label":
            line, column = position(offset)
            raise ParseError(
                line, column, f"runtime label {match.group()} cannot appear in source text"
            )
        if kind not in ("ws", "comment"):
            line, column = position(offset)
            tokens.append(Token(kind, match.group(), line, column))
        offset = match.end()
    line, column = position(len(text))
    tokens.append(Token("eof", "", line, column))
    return tokens


def read_calculus_header(text: str) -> Optional[Calculus]:
    """Calculus named by a ``;; calculus: <id>`` comment on the first non-blank line, if any."""
    match = HEADER_RE.match(text)
    if match is None:
        return None
    try:
        return Calculus(match.group(1).lower())
    except ValueError:
        line = text.count("\n", 0, match.start(1)) + 1
        raise ParseError(line, 1, f"unknown calculus {match.group(1)!r}", [c.value for c in Calculus])
