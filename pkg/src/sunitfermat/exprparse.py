"""Parser for field-element expressions such as ``(1+3*sqrt(13))/2``.

Grammar::

    expr   := sum
    sum    := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*' factor) | ('/' INT))*
    factor := INT | 'sqrt' '(' INT ')' | '(' sum ')'

Division is only by nonzero integer literals, so every expression is an
exact element x + y*sqrt(d) with rational x, y.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import InvalidArgument
from .quadfield import QFElem, QuadField

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|([-+*/()]))")


class ExprError(InvalidArgument):
    def __init__(self, text: str, pos: int, message: str):
        self.text, self.pos = text, pos
        super().__init__(f"{message} at position {pos + 1} in {text!r}\n  {text}\n  {' ' * pos}^")


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprError(text, bad, f"unexpected character {text[bad]!r}")
        start = m.start(m.lastindex)
        kind = ("int", "sqrt", "op")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, F: QuadField):
        self.text, self.F = text, F
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ExprError(self.text, tok[2], f"expected {want!r} but found {got!r}")
        self.i += 1
        return tok

    def parse(self) -> QFElem:
        v = self.sum()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprError(self.text, tok[2], f"unexpected {tok[1]!r}")
        return v

    def sum(self) -> QFElem:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        v = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self) -> QFElem:
        v = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            if op == "*":
                v = v * self.factor()
            else:
                tok = self.take("int")
                k = int(tok[1])
                if k == 0:
                    raise ExprError(self.text, tok[2], "division by zero")
                v = v * Fraction(1, k)
        return v

    def factor(self) -> QFElem:
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return self.F.elem(int(value))
        if kind == "sqrt":
            self.take()
            self.take("op", "(")
            tok = self.take("int")
            if int(tok[1]) != self.F.d:
                raise ExprError(self.text, tok[2], f"sqrt({tok[1]}) does not match the field d = {self.F.d}")
            self.take("op", ")")
            return self.F.sqrt_d
        if value == "(":
            self.take()
            v = self.sum()
            self.take("op", ")")
            return v
        raise ExprError(self.text, pos, f"expected a number, sqrt(d) or '(' but found {value or 'end of input'!r}")


def parse_element(text: str, F: QuadField) -> QFElem:
    if not text.strip():
        raise ExprError(text, 0, "empty expression")
    return _Parser(text, F).parse()
