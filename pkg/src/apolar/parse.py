"""Text grammar for polynomials (``x1..xn``) and operators (``a1..an``).

    expr  := term (("+" | "-") term)*
    term  := unary ("*" unary)*
    unary := ("+" | "-") unary | power
    power := atom ("^" INT)?
    atom  := INT ("/" INT)? | VAR | "(" expr ")"
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .field import QQ, Field
from .poly import Operator, Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")
_VAR = re.compile(r"([A-Za-z]+)(\d+)$")


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1), m.end(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2), m.end(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            out.append((ch, ch, m.start(3), m.end(3)))
        pos = m.end()
    out.append(("end", "", len(text), len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n: int | None, field: Field, kind: str):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.n = n
        self.field = field
        self.kind = kind
        self.max_index = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, typ=None):
        t = self.toks[self.k]
        if typ is not None and t[0] != typ:
            want = "end of input" if typ == "end" else repr(typ)
            got = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {want}, found {got}", self.text, t[2], max(t[3], t[2] + 1))
        self.k += 1
        return t

    # terms are dicts exponent-tuple (variable-length, padded later) -> Fraction
    def expr(self):
        acc = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            rhs = self.term()
            acc = _add(acc, rhs if op == "+" else _neg(rhs))
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "*":
            self.take()
            acc = _mul(acc, self.unary())
        return acc

    def unary(self):
        t = self.peek()
        if t[0] == "-":
            self.take()
            return _neg(self.unary())
        if t[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            caret = self.take()
            t = self.peek()
            if t[0] != "int":
                raise ParseError("malformed exponent (expected a non-negative integer)",
                                 self.text, t[2] if t[0] != "end" else caret[2], max(t[3], t[2] + 1))
            self.take()
            e = int(t[1])
            out = {(): Fraction(1)}
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "int":
            self.take()
            v = Fraction(int(t[1]))
            if self.peek()[0] == "/":
                slash = self.take()
                d = self.take("int") if self.peek()[0] == "int" else None
                if d is None:
                    raise ParseError("expected an integer denominator", self.text, slash[2])
                if int(d[1]) == 0:
                    raise ParseError("division by zero", self.text, d[2], d[3])
                v = v / int(d[1])
            return {(): v}
        if t[0] == "name":
            self.take()
            m = _VAR.match(t[1])
            if m is None or m.group(1) != self.kind:
                other = "a" if self.kind == "x" else "x"
                hint = f" (operators use {other}1..{other}n)" if m and m.group(1) == other else ""
                raise ParseError(f"unknown variable {t[1]!r}{hint}", self.text, t[2], t[3])
            idx = int(m.group(2))
            if idx < 1:
                raise ParseError(f"variable index must be >= 1, got {idx}", self.text, t[2], t[3])
            if self.n is not None and idx > self.n:
                raise ParseError(f"variable index {idx} exceeds the number of variables {self.n}",
                                 self.text, t[2], t[3])
            self.max_index = max(self.max_index, idx)
            e = [0] * idx
            e[idx - 1] = 1
            return {tuple(e): Fraction(1)}
        if t[0] == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        what = "end of input" if t[0] == "end" else repr(t[1])
        raise ParseError(f"unexpected {what}", self.text, t[2], max(t[3], t[2] + 1))


def _pad(a, k):
    return a + (0,) * (k - len(a))


def _add(p, q):
    out = dict(p)
    for a, c in q.items():
        k = max(len(a), max((len(b) for b in out), default=0))
        out = {_pad(b, k): v for b, v in out.items()}
        a = _pad(a, k)
        out[a] = out.get(a, 0) + c
    return {a: c for a, c in out.items() if c}


def _neg(p):
    return {a: -c for a, c in p.items()}


def _mul(p, q):
    out = {}
    for a, c in p.items():
        for b, d in q.items():
            k = max(len(a), len(b))
            e = tuple(x + y for x, y in zip(_pad(a, k), _pad(b, k)))
            out[e] = out.get(e, 0) + c * d
    return {a: c for a, c in out.items() if c}


def _parse(text: str, n, field, kind):
    if not text.strip():
        raise ParseError("empty expression", text, 0)
    p = _Parser(text, n, field, kind)
    terms = p.expr()
    p.take("end")
    nv = n if n is not None else max(p.max_index, 1)
    try:
        return nv, {_pad(a, nv): field.convert(c) for a, c in terms.items()}
    except ZeroDivisionError as e:
        raise ParseError(f"coefficient not defined over {field}: {e}", text, 0, len(text)) from None


def parse_polynomial(text: str, n: int | None = None, field: Field = QQ) -> Polynomial:
    """Parse ``x1..xn`` notation; ``n`` defaults to the largest index used."""
    nv, terms = _parse(text, n, field, "x")
    return Polynomial(nv, terms, field)


def parse_operator(text: str, n: int | None = None, field: Field = QQ, trunc: int | None = None) -> Operator:
    """Parse ``a1..an`` notation."""
    nv, terms = _parse(text, n, field, "a")
    return Operator(nv, terms, field, trunc)
