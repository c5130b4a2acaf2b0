"""Rational functions over F_q, kept reduced after every operation."""
from __future__ import annotations

from .fq import FiniteField, FqElem, gf
from . import poly as P
from .poly import Poly

_ONE = (1,)


def _reduce(F: FiniteField, n: tuple, d: tuple) -> tuple[tuple, tuple]:
    if not d:
        raise ZeroDivisionError("rational function with zero denominator")
    if not n:
        return (), _ONE
    if d == _ONE:
        return n, d
    if len(d) > 1:
        g = P.gcd(F, n, d)
        if g != _ONE:
            n = P.divmod_(F, n, g)[0]
            d = P.divmod_(F, d, g)[0]
    lc = d[-1]
    if lc != 1:
        inv = F.inv[lc]
        n = P.scale(F, n, inv)
        d = P.scale(F, d, inv)
    return n, d


class RatFun:
    """num/den with den monic and gcd(num, den) = 1; immutable."""

    __slots__ = ("field", "num", "den", "var")

    def __init__(self, num, den=None, *, reduced: bool = False):
        if isinstance(num, RatFun):
            if den is not None:
                raise TypeError("use division for RatFun / RatFun")
            self.field, self.num, self.den, self.var = num.field, num.num, num.den, num.var
            return
        if not isinstance(num, Poly):
            raise TypeError("RatFun numerator must be a Poly")
        self.field, self.var = num.field, num.var
        if den is None:
            self.num, self.den = num.c, _ONE
            return
        if den.field is not num.field or den.var != num.var:
            raise ValueError("numerator and denominator in different rings")
        if reduced:
            self.num, self.den = num.c, den.c
        else:
            self.num, self.den = _reduce(self.field, num.c, den.c)

    @classmethod
    def _raw(cls, field: FiniteField, var: str, n: tuple, d: tuple) -> RatFun:
        r = object.__new__(cls)
        r.field, r.var, r.num, r.den = field, var, n, d
        return r

    @classmethod
    def gen(cls, q: int, var: str = "T") -> RatFun:
        return cls._raw(gf(q), var, (0, 1), _ONE)

    def _new(self, n: tuple, d: tuple) -> RatFun:
        return RatFun._raw(self.field, self.var, n, d)

    def const(self, c) -> RatFun:
        code = self.field.code(c)
        return self._new((code,) if code else (), _ONE)

    def zero(self) -> RatFun:
        return self._new((), _ONE)

    def one(self) -> RatFun:
        return self._new(_ONE, _ONE)

    @property
    def numerator(self) -> Poly:
        return Poly(self.field, self.num, self.var)

    @property
    def denominator(self) -> Poly:
        return Poly(self.field, self.den, self.var)

    def _parts(self, other):
        if isinstance(other, RatFun):
            if other.field is not self.field or other.var != self.var:
                raise ValueError(f"mixing rational functions in {self.var} and {other.var}")
            return other.num, other.den
        if isinstance(other, Poly):
            if other.field is not self.field or other.var != self.var:
                raise ValueError(f"mixing rational functions in {self.var} and {other.var}")
            return other.c, _ONE
        if isinstance(other, (int, FqElem)):
            code = self.field.code(other)
            return ((code,) if code else ()), _ONE
        return None

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_integral(self) -> bool:
        return self.den == _ONE

    def is_constant(self) -> bool:
        return self.den == _ONE and len(self.num) <= 1

    def constant_value(self) -> FqElem:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return FqElem(self.field, self.num[0] if self.num else 0)

    def __add__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        F = self.field
        n2, d2 = o
        n1, d1 = self.num, self.den
        if d1 == d2:
            if d1 == _ONE:
                return self._new(P.add(F, n1, n2), _ONE)
            return self._new(*_reduce(F, P.add(F, n1, n2), d1))
        if d2 == _ONE:
            # n1/d1 + n2 is already reduced
            return self._new(P.add(F, n1, P.mul(F, n2, d1)), d1)
        if d1 == _ONE:
            return self._new(P.add(F, P.mul(F, n1, d2), n2), d2)
        if P.is_monomial(d1) and P.is_monomial(d2):
            k1, k2 = len(d1) - 1, len(d2) - 1
            k = max(k1, k2)
            num = P.add(F, (0,) * (k - k1) + n1 if n1 else (), (0,) * (k - k2) + n2 if n2 else ())
            return self._new(*_reduce(F, num, (0,) * k + (1,)))
        g = P.gcd(F, d1, d2)
        c1 = P.divmod_(F, d2, g)[0]
        c2 = P.divmod_(F, d1, g)[0]
        num = P.add(F, P.mul(F, n1, c1), P.mul(F, n2, c2))
        return self._new(*_reduce(F, num, P.mul(F, d1, c1)))

    __radd__ = __add__

    def __neg__(self):
        return self._new(P.neg(self.field, self.num), self.den)

    def __sub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return self + RatFun._raw(self.field, self.var, P.neg(self.field, o[0]), o[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        F = self.field
        n2, d2 = o
        n1, d1 = self.num, self.den
        if not n1 or not n2:
            return self._new((), _ONE)
        if d1 == _ONE and d2 == _ONE:
            return self._new(P.mul(F, n1, n2), _ONE)
        if len(n2) == 1 and d2 == _ONE:
            return self._new(P.scale(F, n1, n2[0]), d1)
        if len(n1) == 1 and d1 == _ONE:
            return self._new(P.scale(F, n2, n1[0]), d2)
        # cross-cancel; each factor pair is coprime already
        g1 = P.gcd(F, n1, d2)
        g2 = P.gcd(F, n2, d1)
        if g1 != _ONE:
            n1 = P.divmod_(F, n1, g1)[0]
            d2 = P.divmod_(F, d2, g1)[0]
        if g2 != _ONE:
            n2 = P.divmod_(F, n2, g2)[0]
            d1 = P.divmod_(F, d1, g2)[0]
        n = P.mul(F, n1, n2)
        d = P.mul(F, d1, d2)
        lc = d[-1]
        if lc != 1:
            inv = F.inv[lc]
            n, d = P.scale(F, n, inv), P.scale(F, d, inv)
        return self._new(n, d)

    __rmul__ = __mul__

    def inverse(self) -> RatFun:
        if not self.num:
            raise ZeroDivisionError("division by the zero rational function")
        F = self.field
        inv = F.inv[self.num[-1]]
        return self._new(P.scale(F, self.den, inv), P.scale(F, self.num, inv))

    def __truediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return self * RatFun._raw(self.field, self.var, *o).inverse()

    def __rtruediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return RatFun._raw(self.field, self.var, *o) * self.inverse()

    def __pow__(self, n: int) -> RatFun:
        if n < 0:
            return self.inverse() ** (-n)
        F = self.field
        if self.den == _ONE:
            return self._new(Poly(F, self.num, self.var).__pow__(n).c, _ONE)
        return self._new((Poly(F, self.num, self.var) ** n).c, (Poly(F, self.den, self.var) ** n).c)

    def frob(self, k: int = 1) -> RatFun:
        # x -> x^(q^k) is injective, so reducedness is preserved
        F = self.field
        return self._new(P.frob(F, self.num, k), P.frob(F, self.den, k))

    def substitute(self, image) -> RatFun:
        """Replace the variable by ``image`` (a RatFun or Poly in another symbol)."""
        num = Poly(self.field, self.num, self.var)(image)
        den = Poly(self.field, self.den, self.var)(image)
        return RatFun(num) / den if isinstance(num, Poly) else num / den

    def __eq__(self, other) -> bool:
        o = self._parts(other) if isinstance(other, (RatFun, Poly, int, FqElem)) else None
        if o is None:
            return NotImplemented
        return self.num == o[0] and self.den == o[1]

    def __hash__(self) -> int:
        return hash((self.field.q, self.var, self.num, self.den))

    def __str__(self) -> str:
        n = P.format_poly(self.field, self.num, self.var)
        if self.den == _ONE:
            return n
        d = P.format_poly(self.field, self.den, self.var)
        return f"({n})/({d})"

    def __repr__(self) -> str:
        return f"RatFun({self}, q={self.field.q})"


def ratfun_arith(op: str, f: RatFun, g: RatFun) -> RatFun:
    """Dispatch by tag: ``add``, ``sub``, ``mul`` or ``div``."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown rational-function operation {op!r}")
