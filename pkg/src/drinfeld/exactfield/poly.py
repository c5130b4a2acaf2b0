"""Dense univariate polynomials over F_q.

A :class:`Poly` is an immutable coefficient tuple (low degree first) of F_q
codes together with the field tables and a variable name.  The same class
serves as A = F_q[T] and as F_q[l] inside Kummer level fields.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .fq import FiniteField, FqElem, gf

# Below this length schoolbook multiplication beats the numpy round trip.
_CONVOLVE_MIN = 24


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def add(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    if F.is_prime:
        p = F.p
        out = [(x + y) % p for x, y in zip(a, b)]
    elif F.p == 2:
        out = [x ^ y for x, y in zip(a, b)]
    else:
        tab, q = F.add, F.q
        out = [tab[x * q + y] for x, y in zip(a, b)]
    out.extend(a[len(b):])
    return _trim(out)


def neg(F: FiniteField, a: Sequence[int]) -> tuple[int, ...]:
    if F.p == 2:
        return tuple(a)
    if F.is_prime:
        p = F.p
        return tuple((-x) % p for x in a)
    n = F.neg
    return tuple(n[x] for x in a)


def sub(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return add(F, a, neg(F, b))


def scale(F: FiniteField, a: Sequence[int], c: int) -> tuple[int, ...]:
    if not c:
        return ()
    if c == 1:
        return tuple(a)
    if F.is_prime:
        p = F.p
        return tuple(x * c % p for x in a)
    tab, q = F.mul, F.q
    return tuple(tab[c * q + x] for x in a)


def mul(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    la, lb = len(a), len(b)
    if F.is_prime:
        p = F.p
        if la >= _CONVOLVE_MIN and lb >= _CONVOLVE_MIN:
            r = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)) % p
            return _trim(r.tolist())
        if la < lb:
            a, b, la, lb = b, a, lb, la
        out = [0] * (la + lb - 1)
        for j, y in enumerate(b):
            if y:
                for i, x in enumerate(a):
                    out[i + j] += x * y
        return _trim([v % p for v in out])
    tab, addt, q = F.mul, F.add, F.q
    out = [0] * (la + lb - 1)
    for j, y in enumerate(b):
        if y:
            row = y * q
            for i, x in enumerate(a):
                if x:
                    k = i + j
                    out[k] = addt[out[k] * q + tab[row + x]]
    return _trim(out)


def divmod_(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    lb = len(b)
    if len(r) < lb:
        return (), tuple(r)
    inv = F.inv[b[-1]]
    quo = [0] * (len(r) - lb + 1)
    if F.is_prime:
        p = F.p
        for k in range(len(r) - lb, -1, -1):
            c = r[k + lb - 1] * inv % p
            if c:
                quo[k] = c
                for i, bi in enumerate(b):
                    r[k + i] = (r[k + i] - c * bi) % p
    else:
        tab, subt, q = F.mul, F.sub, F.q
        for k in range(len(r) - lb, -1, -1):
            c = tab[r[k + lb - 1] * q + inv]
            if c:
                quo[k] = c
                for i, bi in enumerate(b):
                    r[k + i] = subt[r[k + i] * q + tab[c * q + bi]]
    return _trim(quo), _trim(r[: lb - 1])


def is_monomial(a: Sequence[int]) -> bool:
    return bool(a) and not any(a[:-1])


def order(a: Sequence[int]) -> int:
    """Index of the lowest nonzero coefficient (len(a) for zero)."""
    for i, x in enumerate(a):
        if x:
            return i
    return len(a)


def gcd(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Monic gcd; the common case of a monomial argument is O(n)."""
    if not a:
        a, b = b, a
    if not b:
        return scale(F, a, F.inv[a[-1]]) if a else ()
    if len(a) == 1 or len(b) == 1:
        return (1,)
    if is_monomial(a) or is_monomial(b):
        k = min(order(a), order(b))
        return (0,) * k + (1,)
    a, b = tuple(a), tuple(b)
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return scale(F, a, F.inv[a[-1]])


def frob(F: FiniteField, a: Sequence[int], k: int = 1) -> tuple[int, ...]:
    """f(X)^(q^k): coefficients of F_q are fixed, exponents scale by q^k."""
    if not a:
        return ()
    s = F.q**k
    out = [0] * ((len(a) - 1) * s + 1)
    for i, x in enumerate(a):
        out[i * s] = x
    return tuple(out)


class Poly:
    """A polynomial over F_q in the symbol ``var``; immutable."""

    __slots__ = ("field", "c", "var")

    def __init__(self, field: FiniteField, coeffs: Iterable[int] = (), var: str = "T"):
        self.field = field
        self.c = coeffs if isinstance(coeffs, tuple) else _trim(list(coeffs))
        self.var = var

    @classmethod
    def from_ints(cls, q: int, coeffs: Iterable[int], var: str = "T") -> Poly:
        F = gf(q)
        return cls(F, _trim([F.code(x) for x in coeffs]), var)

    @classmethod
    def gen(cls, q: int, var: str = "T") -> Poly:
        return cls(gf(q), (0, 1), var)

    # construction helpers
    def _new(self, c: tuple[int, ...]) -> Poly:
        return Poly(self.field, c, self.var)

    def const(self, c) -> Poly:
        code = self.field.code(c)
        return self._new((code,) if code else ())

    def zero(self) -> Poly:
        return self._new(())

    def one(self) -> Poly:
        return self._new((1,))

    def _coerce(self, other) -> tuple[int, ...] | None:
        if isinstance(other, Poly):
            if other.field is not self.field or other.var != self.var:
                raise ValueError(f"mixing polynomials in {self.var} and {other.var}")
            return other.c
        if isinstance(other, (int, FqElem)):
            code = self.field.code(other)
            return (code,) if code else ()
        return None

    # properties
    @property
    def degree(self) -> int:
        return len(self.c) - 1 if self.c else -1

    @property
    def lc(self) -> FqElem:
        return FqElem(self.field, self.c[-1] if self.c else 0)

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def coeff(self, i: int) -> FqElem:
        return FqElem(self.field, self.c[i] if 0 <= i < len(self.c) else 0)

    def coefficients(self) -> list[FqElem]:
        return [FqElem(self.field, x) for x in self.c]

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(add(self.field, self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(sub(self.field, self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(sub(self.field, o, self.c))

    def __neg__(self):
        return self._new(neg(self.field, self.c))

    def __mul__(self, other):
        if isinstance(other, (int, FqElem)):
            return self._new(scale(self.field, self.c, self.field.code(other)))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(mul(self.field, self.c, o))

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        qq, r = divmod_(self.field, self.c, o)
        return self._new(qq), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly:
        qq, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return qq

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = self.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> Poly:
        if not self.c:
            return self
        return self._new(scale(self.field, self.c, self.field.inv[self.c[-1]]))

    def frob(self, k: int = 1) -> Poly:
        return self._new(frob(self.field, self.c, k))

    def shift(self, k: int) -> Poly:
        """Multiply by var**k (k >= 0)."""
        return self._new((0,) * k + self.c if self.c else ())

    def derivative(self) -> Poly:
        p = self.field.p
        return self._new(_trim([self.field.mul[x * self.field.q + (i % p)] if i % p else 0
                                for i, x in enumerate(self.c)][1:]))

    def __call__(self, x):
        """Evaluate by Horner; x may be any element supporting ``const``."""
        if isinstance(x, int):
            x = FqElem(self.field, self.field.code(x))
        acc = x.const(0)
        for code in reversed(self.c):
            acc = acc * x + x.const(FqElem(self.field, code)) if code else acc * x
        return acc

    def compose(self, other: Poly) -> Poly:
        return self(other)

    # comparison / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field is other.field and self.var == other.var and self.c == other.c
        if isinstance(other, (int, FqElem)):
            return self.c == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.var, self.c))

    def sort_key(self) -> tuple:
        return (len(self.c), tuple(reversed(self.c)))

    def __str__(self) -> str:
        return format_poly(self.field, self.c, self.var)

    def __repr__(self) -> str:
        return f"Poly({self}, q={self.field.q})"


def format_poly(F: FiniteField, c: Sequence[int], var: str) -> str:
    """Canonical text such as ``2*T^2+T+1``; descending degree."""
    if not c:
        return "0"
    terms = []
    for i in range(len(c) - 1, -1, -1):
        x = c[i]
        if not x:
            continue
        cs = F.format_code(x)
        if not F.is_prime and "+" in cs:
            cs = f"({cs})"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(cs)
        elif x == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return "+".join(terms)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    if f.field is not g.field or f.var != g.var:
        raise ValueError("gcd of polynomials over different rings")
    return f._new(gcd(f.field, f.c, g.c))


def poly_arith(op: str, f: Poly, g: Poly):
    """Dispatch by tag: ``add``, ``sub``, ``mul``, ``divmod`` or ``gcd``."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "gcd":
        return poly_gcd(f, g)
    raise ValueError(f"unknown polynomial operation {op!r}")


def enumerate_monics(q: int, d_max: int, var: str = "T") -> list[Poly]:
    """All monic polynomials of degree <= d_max, by degree then by code."""
    if d_max < 0:
        raise ValueError("d_max must be >= 0")
    out = []
    for d in range(d_max + 1):
        out.extend(monics_of_degree(q, d, var))
    return out


def monics_of_degree(q: int, d: int, var: str = "T") -> list[Poly]:
    F = gf(q)
    out = []
    for code in range(q**d):
        digits = [(code // q**i) % q for i in range(d)]
        out.append(Poly(F, tuple(digits) + (1,), var))
    return out


def polys_of_degree_below(q: int, d: int, var: str = "T") -> list[Poly]:
    """All polynomials (monic or not, including 0) of degree < d."""
    F = gf(q)
    return [Poly(F, _trim([(code // q**i) % q for i in range(d)]), var) for code in range(q**d)]
