"""Parsing of the canonical element grammar (``2*T^2+T+1``, ``(l+1)/(l)``, ...).

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ['^' INT]
    atom   := INT | NAME | '(' expr ')'

``z`` always denotes the generator of F_q (only meaningful when q = p^e, e > 1).
"""
from __future__ import annotations

import re

from .extension import ExtElem, ExtField
from .fq import FqElem, gf
from .kummer import LAMBDA
from .poly import Poly
from .ratfun import RatFun

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    for num, name, op in _TOKEN.findall(text.strip()):
        if num:
            out.append(("int", num))
        elif name:
            out.append(("name", name))
        elif op.strip():
            out.append(("op", op))
    return out


class _Parser:
    def __init__(self, text: str, names: dict, const):
        self.toks = _tokens(text)
        self.i = 0
        self.names = names
        self.const = const
        if not self.toks:
            raise ValueError("empty expression")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"unexpected token {tok[1]!r} at position {self.i}")
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input at token {self.peek()[1]!r}")
        return v

    def expr(self):
        if self.peek() == ("op", "-"):
            self.take()
            v = -self.term()
        else:
            v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.factor()
            v = v * f if op == "*" else v / f
        return v

    def factor(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            v = v ** int(self.take("int")[1])
        return v

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return self.const(int(val))
        if kind == "name":
            self.take()
            if val not in self.names:
                raise ValueError(f"unknown symbol {val!r}")
            return self.names[val]
        self.take("op", "(")
        v = self.expr()
        self.take("op", ")")
        return v


def _fq_gen(q: int) -> FqElem:
    F = gf(q)
    return FqElem(F, F.generator_code())


def parse_fq(text: str, q: int) -> FqElem:
    F = gf(q)
    names = {"z": _fq_gen(q)} if not F.is_prime else {}
    return _Parser(text, names, lambda n: F(n)).parse()


def parse_ratfun(text: str, q: int, var: str = "T") -> RatFun:
    x = RatFun.gen(q, var)
    names = {var: x}
    if not gf(q).is_prime:
        names["z"] = x.const(_fq_gen(q))
    v = _Parser(text, names, lambda n: x.const(n)).parse()
    return v if isinstance(v, RatFun) else x.const(v)


def parse_poly(text: str, q: int, var: str = "T") -> Poly:
    r = parse_ratfun(text, q, var)
    if not r.is_integral():
        raise ValueError(f"{text!r} is not a polynomial")
    return r.numerator


def parse_kummer(text: str, q: int) -> RatFun:
    return parse_ratfun(text, q, LAMBDA)


def parse_ext(text: str, field: ExtField) -> ExtElem:
    names = {"x": field.gen()}
    if not field.base.is_prime:
        names["z"] = field(_fq_gen(field.q))
    v = _Parser(text, names, lambda n: field(n)).parse()
    return v if isinstance(v, ExtElem) else field(v)
