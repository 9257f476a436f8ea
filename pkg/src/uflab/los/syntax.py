"""First-order syntax: core AST, parser, printer.

The core language has negation, disjunction, the existential quantifier,
equality and relation atoms.  Conjunction, implication and the universal
quantifier are surface sugar, expanded during parsing in the usual way:

    (p and q)      ->  not ((not p) or (not q))
    (p implies q)  ->  ((not p) or q)
    forall v. p    ->  not exists v. not p

Grammar (binary connectives are always parenthesized, so no precedence):

    formula := 'not' formula
             | 'exists' NAME '.' formula
             | 'forall' NAME '.' formula
             | '(' formula ('or' | 'and' | 'implies') formula ')'
             | NAME '=' NAME
             | NAME '(' NAME (',' NAME)* ')'

Terms are plain names; whether a name denotes a constant or a variable is
resolved against the structure at evaluation time.  The printer emits core
syntax only, so parse(print(f)) == f for every formula f.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from ..errors import UflabError


class ParseError(UflabError):
    """Syntax error with 1-based position information."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__("%d:%d: %s" % (line, col, message))
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Rel:
    name: str
    terms: tuple[str, ...]


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Eq, Rel, Not, Or, Exists]

KEYWORDS = frozenset({"not", "or", "and", "implies", "exists", "forall"})

_TOKEN = re.compile(r"[A-Za-z_][A-Za-z_0-9]*|[().,=]|\S")


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> Iterator[_Tok]:
    for line_no, line in enumerate(text.splitlines() or [""], start=1):
        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(line, pos)
            tok = m.group(0)
            if not (tok[0].isalpha() or tok[0] == "_" or tok in "().,="):
                raise ParseError("unexpected character %r" % tok, line_no, pos + 1)
            yield _Tok(tok, line_no, pos + 1)
            pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0
        last_line = text.count("\n") + 1
        self._eof = _Tok("end of input", last_line, len(text.splitlines()[-1]) + 1 if text.splitlines() else 1)

    def peek(self) -> _Tok:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else self._eof

    def take(self) -> _Tok:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.take()
        if tok.text != text:
            raise ParseError("expected %r, found %r" % (text, tok.text), tok.line, tok.col)
        return tok

    def name(self, what: str) -> str:
        tok = self.take()
        if not (tok.text[0].isalpha() or tok.text[0] == "_") or tok.text in KEYWORDS:
            raise ParseError("expected %s, found %r" % (what, tok.text), tok.line, tok.col)
        return tok.text

    def formula(self) -> Formula:
        tok = self.peek()
        if tok.text == "not":
            self.take()
            return Not(self.formula())
        if tok.text in ("exists", "forall"):
            self.take()
            var = self.name("a variable")
            self.expect(".")
            body = self.formula()
            if tok.text == "exists":
                return Exists(var, body)
            return Not(Exists(var, Not(body)))
        if tok.text == "(":
            self.take()
            left = self.formula()
            op = self.take()
            if op.text not in ("or", "and", "implies"):
                raise ParseError(
                    "expected 'or', 'and' or 'implies', found %r" % op.text,
                    op.line,
                    op.col,
                )
            right = self.formula()
            self.expect(")")
            if op.text == "or":
                return Or(left, right)
            if op.text == "and":
                return Not(Or(Not(left), Not(right)))
            return Or(Not(left), right)
        return self.atom()

    def atom(self) -> Formula:
        first = self.name("a term or relation")
        tok = self.peek()
        if tok.text == "=":
            self.take()
            return Eq(first, self.name("a term"))
        if tok.text == "(":
            self.take()
            terms = [self.name("a term")]
            while self.peek().text == ",":
                self.take()
                terms.append(self.name("a term"))
            self.expect(")")
            return Rel(first, tuple(terms))
        raise ParseError(
            "expected '=' or '(' after %r" % first, tok.line, tok.col
        )

    def parse(self) -> Formula:
        f = self.formula()
        tok = self.peek()
        if self.pos < len(self.tokens):
            raise ParseError("trailing input %r" % tok.text, tok.line, tok.col)
        return f


def parse_formula(text: str) -> Formula:
    """Parse the documented grammar into the core AST (sugar expanded)."""
    return _Parser(text).parse()


def print_formula(f: Formula) -> str:
    """Core-syntax rendering; inverse of parse_formula on its image."""
    if isinstance(f, Eq):
        return "%s = %s" % (f.left, f.right)
    if isinstance(f, Rel):
        return "%s(%s)" % (f.name, ", ".join(f.terms))
    if isinstance(f, Not):
        return "not %s" % print_formula(f.body)
    if isinstance(f, Or):
        return "(%s or %s)" % (print_formula(f.left), print_formula(f.right))
    if isinstance(f, Exists):
        return "exists %s. %s" % (f.var, print_formula(f.body))
    raise TypeError("not a formula: %r" % (f,))


def free_vars(f: Formula) -> frozenset[str]:
    """Names occurring in term position outside any binder for them.

    Constants are syntactically indistinguishable from variables, so a
    structure's constant names are excluded by callers where relevant.
    """
    if isinstance(f, Eq):
        return frozenset((f.left, f.right))
    if isinstance(f, Rel):
        return frozenset(f.terms)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Or):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Exists):
        return free_vars(f.body) - {f.var}
    raise TypeError("not a formula: %r" % (f,))


def height(f: Formula) -> int:
    """AST height, the induction measure used by the verifier."""
    if isinstance(f, (Eq, Rel)):
        return 1
    if isinstance(f, Not):
        return 1 + height(f.body)
    if isinstance(f, Or):
        return 1 + max(height(f.left), height(f.right))
    if isinstance(f, Exists):
        return 1 + height(f.body)
    raise TypeError("not a formula: %r" % (f,))
