"""The finite field F_q, q = p^e.

Elements are encoded as integers 0..q-1 whose base-p digits are the
coefficients of a polynomial in the generator ``z`` over F_p, reduced modulo
the lexicographically least monic irreducible polynomial of degree e.  For
prime q the code is just the residue mod p.
"""
from __future__ import annotations

import functools
from typing import Iterator, Sequence


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be a prime power >= 2, got {q!r}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"q must be a prime power >= 2, got {q}")
    return p, e


def _prime_poly_rem(a: list[int], b: Sequence[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        if c:
            off = len(a) - len(b)
            for i, bi in enumerate(b):
                a[off + i] = (a[off + i] - c * bi) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _monics_over_prime(p: int, d: int) -> Iterator[list[int]]:
    # Ordered by the integer whose base-p digits are c_0..c_{d-1}.
    for code in range(p**d):
        digits = [(code // p**i) % p for i in range(d)]
        yield digits + [1]


def _irreducible_over_prime(f: list[int], p: int) -> bool:
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for g in _monics_over_prime(p, d):
            if not _prime_poly_rem(f, g, p):
                return False
    return True


def least_irreducible_over_prime(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e over F_p (low-to-high)."""
    for f in _monics_over_prime(p, e):
        if e == 1 or _irreducible_over_prime(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FiniteField:
    """Arithmetic tables for F_q.  Use :func:`gf` to get the shared instance."""

    def __init__(self, q: int):
        p, e = prime_power(q)
        self.q, self.p, self.e = q, p, e
        self.modulus = least_irreducible_over_prime(p, e)
        self.is_prime = e == 1
        digits = [self._digits(c) for c in range(q)]
        self.add = [self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                    for a in range(q) for b in range(q)]
        self.neg = [self._encode([(-x) % p for x in digits[a]]) for a in range(q)]
        self.sub = [self.add[a * q + self.neg[b]] for a in range(q) for b in range(q)]
        self.mul = [self._mul_codes(digits[a], digits[b]) for a in range(q) for b in range(q)]
        self.inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul[a * q + b] == 1:
                    self.inv[a] = b
                    break

    def _digits(self, c: int) -> list[int]:
        return [(c // self.p**i) % self.p for i in range(self.e)]

    def _encode(self, digits: Sequence[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _mul_codes(self, a: Sequence[int], b: Sequence[int]) -> int:
        p = self.p
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        rem = _prime_poly_rem(prod, self.modulus, p) if self.e > 1 else prod
        rem = list(rem) + [0] * (self.e - len(rem))
        return self._encode(rem[: self.e])

    def __call__(self, value) -> FqElem:
        if isinstance(value, FqElem):
            if value.field is not self:
                raise ValueError("element of a different field")
            return value
        return FqElem(self, self.code(value))

    def code(self, value) -> int:
        """Code of an integer (its image in the prime field) or an FqElem."""
        if isinstance(value, FqElem):
            return value.v
        return value % self.p

    def elements(self) -> list[FqElem]:
        return [FqElem(self, c) for c in range(self.q)]

    def units(self) -> list[FqElem]:
        return [FqElem(self, c) for c in range(1, self.q)]

    def squares(self) -> list[FqElem]:
        """The subgroup F_q^{*2} of nonzero squares, sorted by code."""
        return [FqElem(self, c) for c in sorted({self.mul[a * self.q + a] for a in range(1, self.q)})]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n > 0 else (1 if n == 0 else _raise_zero())
        n %= self.q - 1
        r = 1
        while n:
            if n & 1:
                r = self.mul[r * self.q + a]
            a = self.mul[a * self.q + a]
            n >>= 1
        return r

    def format_code(self, c: int) -> str:
        """Render a code; non-prime fields use the generator ``z``."""
        if self.is_prime:
            return str(c)
        terms = []
        for i, d in reversed(list(enumerate(self._digits(c)))):
            if not d:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(d))
            else:
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(terms) if terms else "0"

    def generator_code(self) -> int:
        """Code of ``z`` (equals p for e > 1)."""
        return self.p if self.e > 1 else 0

    def __repr__(self) -> str:
        return f"GF({self.q})"


def _raise_zero():
    raise ZeroDivisionError("0 has no inverse")


@functools.lru_cache(maxsize=None)
def gf(q: int) -> FiniteField:
    return FiniteField(q)


class FqElem:
    """An element of F_q; immutable."""

    __slots__ = ("field", "v")

    def __init__(self, field: FiniteField, v: int):
        self.field = field
        self.v = v

    def _c(self, other) -> int:
        if isinstance(other, FqElem):
            if other.field is not self.field:
                raise ValueError("mixing elements of different fields")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        F = self.field
        return FqElem(F, F.add[self.v * F.q + o])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        F = self.field
        return FqElem(F, F.sub[self.v * F.q + o])

    def __rsub__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        F = self.field
        return FqElem(F, F.sub[o * F.q + self.v])

    def __mul__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        F = self.field
        return FqElem(F, F.mul[self.v * F.q + o])

    __rmul__ = __mul__

    def __neg__(self):
        return FqElem(self.field, self.field.neg[self.v])

    def inverse(self) -> FqElem:
        if not self.v:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return FqElem(self.field, self.field.inv[self.v])

    def __truediv__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        if not o:
            raise ZeroDivisionError("division by 0 in F_q")
        F = self.field
        return FqElem(F, F.mul[self.v * F.q + F.inv[o]])

    def __rtruediv__(self, other):
        return FqElem(self.field, self._c(other)) / self

    def __pow__(self, n: int):
        return FqElem(self.field, self.field.pow(self.v, n))

    def frob(self) -> FqElem:
        return self

    def const(self, c) -> FqElem:
        return FqElem(self.field, self.field.code(c))

    def is_zero(self) -> bool:
        return self.v == 0

    def __bool__(self) -> bool:
        return self.v != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElem):
            return self.field is other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.v))

    def __str__(self) -> str:
        return self.field.format_code(self.v)

    def __repr__(self) -> str:
        return f"FqElem({self}, GF({self.field.q}))"
