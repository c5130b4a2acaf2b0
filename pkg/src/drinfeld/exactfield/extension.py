"""Finite extensions F_{q^n} = F_q[x]/(m(x)) with a deterministic modulus."""
from __future__ import annotations

import functools
from typing import Iterator, Sequence

import numpy as np

from . import poly as P
from .fq import FiniteField, FqElem, gf
from .poly import Poly

# numpy paths pay off only for fairly large degrees
_NUMPY_MIN_DEGREE = 12


def _powmod(F: FiniteField, base: tuple, e: int, m: tuple) -> tuple:
    result: tuple = (1,)
    base = P.divmod_(F, base, m)[1]
    while e:
        if e & 1:
            result = P.divmod_(F, P.mul(F, result, base), m)[1]
        e >>= 1
        if e:
            base = P.divmod_(F, P.mul(F, base, base), m)[1]
    return result


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F: FiniteField, f: Sequence[int]) -> bool:
    """Rabin's test for a monic f over F_q."""
    f = tuple(f)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = (0, 1)
    powers = {}
    cur = x
    for i in range(1, n + 1):
        cur = _powmod(F, cur, F.q, f)
        powers[i] = cur
    if P.sub(F, powers[n], x):
        return False
    for r in _prime_factors(n):
        g = P.gcd(F, P.sub(F, powers[n // r], x), f)
        if g != (1,):
            return False
    return True


def least_irreducible(q: int, n: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree n over F_q."""
    F = gf(q)
    for code in range(q**n):
        digits = tuple((code // q**i) % q for i in range(n))
        f = digits + (1,)
        if n == 1 or (digits[0] != 0 and is_irreducible(F, f)):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


class ExtField:
    """F_{q^n} as residues modulo a monic irreducible of degree n over F_q."""

    def __init__(self, q: int, n: int, modulus: Sequence[int] | None = None):
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        self.base = gf(q)
        self.q, self.n = q, n
        self.order = q**n
        self.modulus = tuple(modulus) if modulus is not None else least_irreducible(q, n)
        if len(self.modulus) != n + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        F = self.base
        self._np = F.is_prime and n >= _NUMPY_MIN_DEGREE
        if self._np:
            rows = []
            cur = P.divmod_(F, (0,) * n + (1,), self.modulus)[1]
            for _ in range(n - 1):
                rows.append(list(cur) + [0] * (n - len(cur)))
                cur = P.divmod_(F, (0,) + cur, self.modulus)[1]
            self._red = np.array(rows, dtype=np.int64).reshape(n - 1, n)
        # Frobenius as an F_q-linear map on the power basis
        self._frob_rows = []
        for i in range(n):
            img = _powmod(F, (0,) * i + (1,), q, self.modulus)
            self._frob_rows.append(tuple(img) + (0,) * (n - len(img)))
        if self._np:
            self._frob_mat = np.array(self._frob_rows, dtype=np.int64)

    # element construction
    def __call__(self, value) -> ExtElem:
        if isinstance(value, ExtElem):
            if value.field is not self:
                raise ValueError("element of another extension field")
            return value
        if isinstance(value, (int, FqElem)):
            code = self.base.code(value)
            return ExtElem(self, (code,) if code else ())
        if isinstance(value, (tuple, list)):
            return ExtElem(self, self._reduce(P._trim([self.base.code(v) for v in value])))
        raise TypeError(f"cannot build an element of F_{self.order} from {value!r}")

    def zero(self) -> ExtElem:
        return ExtElem(self, ())

    def one(self) -> ExtElem:
        return ExtElem(self, (1,))

    def gen(self) -> ExtElem:
        """The class of x."""
        return ExtElem(self, self._reduce((0, 1)))

    def from_index(self, k: int) -> ExtElem:
        q = self.q
        return ExtElem(self, P._trim([(k // q**i) % q for i in range(self.n)]))

    def elements(self) -> Iterator[ExtElem]:
        for k in range(self.order):
            yield self.from_index(k)

    def random(self, rng) -> ExtElem:
        return ExtElem(self, P._trim([int(v) for v in rng.integers(0, self.q, size=self.n)]))

    # arithmetic on raw tuples
    def _reduce(self, c: tuple) -> tuple:
        if len(c) <= self.n:
            return c
        return P.divmod_(self.base, c, self.modulus)[1]

    def _mul(self, a: tuple, b: tuple) -> tuple:
        if not a or not b:
            return ()
        F = self.base
        if self._np and len(a) + len(b) > self.n + 1:
            p, n = F.p, self.n
            prod = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
            low = np.zeros(n, dtype=np.int64)
            m = min(n, prod.size)
            low[:m] = prod[:m]
            if prod.size > n:
                high = prod[n:]
                low += high @ self._red[: high.size]
            return P._trim((low % p).tolist())
        return self._reduce(P.mul(F, a, b))

    def _frob(self, a: tuple) -> tuple:
        if not a:
            return a
        F = self.base
        if self._np:
            v = np.array(a, dtype=np.int64) @ self._frob_mat[: len(a)]
            return P._trim((v % F.p).tolist())
        if F.is_prime:
            # coefficients of F_p are fixed under x -> x^q
            out: tuple = ()
            for i, c in enumerate(a):
                if c:
                    out = P.add(F, out, P.scale(F, self._frob_rows[i], c))
            return out
        return _powmod(F, a, self.q, self.modulus)

    def _inv(self, a: tuple) -> tuple:
        if not a:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.order}")
        F = self.base
        r0, r1 = self.modulus, a
        s0, s1 = (), (1,)
        while r1:
            qq, r = P.divmod_(F, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, P.sub(F, s0, P.mul(F, qq, s1))
        # r0 is a nonzero constant since the modulus is irreducible
        return self._reduce(P.scale(F, s0, F.inv[r0[0]]))

    def format(self, c: tuple) -> str:
        return P.format_poly(self.base, c, "x")

    def __repr__(self) -> str:
        return f"ExtField(q={self.q}, n={self.n}, modulus={P.format_poly(self.base, self.modulus, 'x')})"


@functools.lru_cache(maxsize=None)
def make_extension(q: int, n: int) -> ExtField:
    """The deterministic F_{q^n}: lexicographically least irreducible modulus."""
    return ExtField(q, n)


class ExtElem:
    """An element of F_{q^n}; immutable."""

    __slots__ = ("field", "c")

    def __init__(self, field: ExtField, c: tuple):
        self.field = field
        self.c = c

    def _o(self, other) -> tuple | None:
        if isinstance(other, ExtElem):
            if other.field is not self.field:
                raise ValueError("mixing elements of different extension fields")
            return other.c
        if isinstance(other, (int, FqElem)):
            code = self.field.base.code(other)
            return (code,) if code else ()
        return None

    def const(self, c) -> ExtElem:
        code = self.field.base.code(c)
        return ExtElem(self.field, (code,) if code else ())

    def __add__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, P.add(self.field.base, self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, P.sub(self.field.base, self.c, o))

    def __rsub__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, P.sub(self.field.base, o, self.c))

    def __neg__(self):
        return ExtElem(self.field, P.neg(self.field.base, self.c))

    def __mul__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, self.field._mul(self.c, o))

    __rmul__ = __mul__

    def inverse(self) -> ExtElem:
        return ExtElem(self.field, self.field._inv(self.c))

    def __truediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, self.field._mul(self.c, self.field._inv(o)))

    def __rtruediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, self.field._mul(o, self.field._inv(self.c)))

    def __pow__(self, e: int) -> ExtElem:
        K = self.field
        if e < 0:
            return self.inverse() ** (-e)
        if self.c and e >= K.order:
            e = (e - 1) % (K.order - 1) + 1
        result: tuple = (1,)
        base = self.c
        while e:
            if e & 1:
                result = K._mul(result, base)
            e >>= 1
            if e:
                base = K._mul(base, base)
        return ExtElem(K, result)

    def frob(self, k: int = 1) -> ExtElem:
        c = self.c
        for _ in range(k):
            c = self.field._frob(c)
        return ExtElem(self.field, c)

    def coords(self) -> list[int]:
        """F_q-coordinates in the power basis 1, x, ..., x^{n-1}."""
        return list(self.c) + [0] * (self.field.n - len(self.c))

    def index(self) -> int:
        q = self.field.q
        return sum(c * q**i for i, c in enumerate(self.c))

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtElem):
            return self.field is other.field and self.c == other.c
        if isinstance(other, (int, FqElem)):
            return self.c == self._o(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.field.n, self.c))

    def __str__(self) -> str:
        return self.field.format(self.c)

    def __repr__(self) -> str:
        return f"ExtElem({self}, F_{self.field.order})"


def as_poly(e: ExtElem, var: str = "x") -> Poly:
    return Poly(e.field.base, e.c, var)
