"""Ideal expressions such as ``V(x1,x2) & V(x3,x4)`` or ``(x1*x2, x1*x3)``.

Grammar (``+`` binds tighter than intersection)::

    expr    := term (('&' | '∩' | 'cap') term)*
    term    := factor ('+' factor)*
    factor  := '(' monlist ')' | 'V(' varlist ')' | '(' expr ')'
    monlist := mon (',' mon)*  |  '0'
    mon     := var ('*' var)*  |  '1'
    var     := 'x' digits

``(0)`` and ``(1)`` denote the zero and unit ideals so that every ideal
prints to something that parses back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .combinatorics import SquarefreeMonomialIdeal, ideal_sum, intersect, members
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(?P<var>x\d+)|(?P<num>\d+)|(?P<cap>cap\b)|(?P<V>V\s*\()|(?P<op>[()*,+&∩]))")


@dataclass(frozen=True)
class Gens:
    monomials: tuple  # tuple of tuples of variable indices; () is the monomial 1
    pos: int


@dataclass(frozen=True)
class Prime:
    variables: tuple
    pos: int


@dataclass(frozen=True)
class Meet:
    parts: tuple


@dataclass(frozen=True)
class Join:
    parts: tuple


def _max_var(node) -> tuple[int, int]:
    if isinstance(node, Gens):
        return max((v for m in node.monomials for v in m), default=0), node.pos
    if isinstance(node, Prime):
        return max(node.variables, default=0), node.pos
    best = (0, 0)
    for p in node.parts:
        best = max(best, _max_var(p))
    return best


@dataclass(frozen=True)
class IdealExpression:
    root: object
    text: str

    @property
    def max_variable(self) -> int:
        return _max_var(self.root)[0]

    def evaluate(self, n: int) -> SquarefreeMonomialIdeal:
        top, pos = _max_var(self.root)
        if top > n:
            raise ParseError(f"variable index x{top} out of range for n={n}", pos)
        return _eval(self.root, n)


def _eval(node, n):
    if isinstance(node, Gens):
        return SquarefreeMonomialIdeal.from_supports(n, node.monomials)
    if isinstance(node, Prime):
        return SquarefreeMonomialIdeal.from_supports(n, [(v,) for v in node.variables])
    parts = [_eval(p, n) for p in node.parts]
    return intersect(*parts) if isinstance(node, Meet) else ideal_sum(*parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        i = 0
        while i < len(text):
            if text[i:].strip() == "":
                break
            m = _TOKEN.match(text, i)
            if not m:
                j = i
                while j < len(text) and text[j].isspace():
                    j += 1
                raise ParseError(f"unexpected character {text[j]!r}", j)
            kind = m.lastgroup
            start = m.start(kind)
            val = m.group(kind)
            if kind == "op":
                kind = val
            elif kind == "cap":
                kind = "&"
            if kind == "∩":
                kind = "&"
            self.toks.append((kind, val, start))
            i = m.end()
        self.k = 0

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else ("eof", "", len(self.text))

    def take(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            want = {"eof": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", tok[2])
        self.k += 1
        return tok

    def expr(self):
        parts = [self.term()]
        while self.peek()[0] == "&":
            self.k += 1
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Meet(tuple(parts))

    def term(self):
        parts = [self.factor()]
        while self.peek()[0] == "+":
            self.k += 1
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Join(tuple(parts))

    def factor(self):
        kind, _, pos = self.peek()
        if kind == "V":
            self.k += 1
            vs = [self.var()]
            while self.peek()[0] == ",":
                self.k += 1
                vs.append(self.var())
            self.take(")")
            return Prime(tuple(vs), pos)
        if kind == "(":
            self.k += 1
            nxt = self.peek()[0]
            if nxt in ("var", "num"):
                node = self.monlist(pos)
            else:
                node = self.expr()
            self.take(")")
            return node
        got = "end of input" if kind == "eof" else repr(self.peek()[1])
        raise ParseError(f"expected '(' or 'V(', found {got}", pos)

    def var(self) -> int:
        _, val, pos = self.take("var")
        idx = int(val[1:])
        if idx < 1:
            raise ParseError(f"variable index x{idx} out of range", pos)
        return idx

    def monlist(self, pos):
        kind, val, p = self.peek()
        if kind == "num":
            self.k += 1
            if val == "0":
                return Gens((), pos)
            if val == "1":
                return Gens(((),), pos)
            raise ParseError(f"unexpected number {val!r}", p)
        mons = [self.mon()]
        while self.peek()[0] == ",":
            self.k += 1
            mons.append(self.mon())
        return Gens(tuple(mons), pos)

    def mon(self):
        start = self.peek()[2]
        vs = [self.var()]
        while self.peek()[0] == "*":
            self.k += 1
            vs.append(self.var())
        if len(set(vs)) != len(vs):
            raise ParseError("squarefree only", start)
        return tuple(vs)


def parse_ideal(text: str, n: int | None = None) -> IdealExpression:
    p = _Parser(text)
    root = p.expr()
    p.take("eof")
    expr = IdealExpression(root, text)
    if n is not None:
        expr.evaluate(n)
    return expr


def ideal_from_text(text: str, n: int) -> SquarefreeMonomialIdeal:
    return parse_ideal(text, n).evaluate(n)


def format_ideal(I: SquarefreeMonomialIdeal) -> str:
    if I.is_zero:
        return "(0)"
    if I.is_unit:
        return "(1)"
    return "(" + ", ".join("*".join(f"x{v}" for v in members(g)) for g in I.gens) + ")"
