"""Surface syntax: parsing and printing."""

from .lexer import ParseError, Token, read_calculus_header, tokenize
from .grammar import (
    COMPUTATION_FORMS,
    ProgramPrintError,
    parse_phrase,
    parse_program,
    print_program,
)

__all__ = [
    "ParseError",
    "Token",
    "read_calculus_header",
    "tokenize",
    "COMPUTATION_FORMS",
    "ProgramPrintError",
    "parse_phrase",
    "parse_program",
    "print_program",
]
