"""F_q-linear polynomials under composition, Drinfeld modules and Moore determinants.

Coefficients may live in any supported ring (F_q, F_{q^n}, F_q(T), F_q(l),
or truncated series over those); the only requirements are the arithmetic
operators, ``is_zero`` and ``frob`` (the q-power map).
"""
from __future__ import annotations

import functools
from itertools import permutations, product
from typing import Sequence

from .exactfield import FqElem, Poly, RatFun


def _is_zero(c) -> bool:
    return c.is_zero()


class SkewPoly:
    """c_0 X + c_1 X^q + ... + c_n X^(q^n); multiplication is composition."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("a skew polynomial needs at least one coefficient")
        while len(coeffs) > 1 and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        """tau-degree; -1 for the zero polynomial."""
        if len(self.coeffs) == 1 and _is_zero(self.coeffs[0]):
            return -1
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.coeffs[0].const(0)

    @property
    def leading(self):
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.degree < 0

    def _zero(self):
        return self.coeffs[0].const(0)

    def __add__(self, other: SkewPoly) -> SkewPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: SkewPoly) -> SkewPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> SkewPoly:
        return SkewPoly([-c for c in self.coeffs])

    def scale(self, c) -> SkewPoly:
        """(cX) o self."""
        return SkewPoly([c * x for x in self.coeffs])

    def compose(self, other: SkewPoly) -> SkewPoly:
        return skew_compose(self, other)

    def __matmul__(self, other: SkewPoly) -> SkewPoly:
        return skew_compose(self, other)

    def __call__(self, x):
        """Evaluate sum c_i x^(q^i)."""
        acc = None
        xi = x
        for i, c in enumerate(self.coeffs):
            if i:
                xi = xi.frob()
            if not _is_zero(c):
                term = c * xi
                acc = term if acc is None else acc + term
        return acc if acc is not None else x.const(0) * x

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self[i] == other[i] for i in range(n))

    __hash__ = None

    def __str__(self) -> str:
        return format_skew(self)

    def __repr__(self) -> str:
        return f"SkewPoly({self})"


def format_skew(f: SkewPoly) -> str:
    """Render as ``T*X + g*X^q + D*X^q2`` style text (coefficients in parentheses)."""
    terms = []
    for i, c in enumerate(f.coeffs):
        if _is_zero(c):
            continue
        mono = "X" if i == 0 else ("X^q" if i == 1 else f"X^q{i}")
        cs = str(c)
        terms.append(mono if cs == "1" else f"({cs})*{mono}")
    return " + ".join(terms) if terms else "0"


def skew_compose(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Coefficients of f o g: (f o g)_k = sum_{i+j=k} f_i * g_j^(q^i)."""
    twisted = [list(g.coeffs)]
    for _ in range(1, len(f.coeffs)):
        twisted.append([c.frob() for c in twisted[-1]])
    out = [None] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fi in enumerate(f.coeffs):
        if _is_zero(fi):
            continue
        for j, gj in enumerate(twisted[i]):
            if _is_zero(gj):
                continue
            t = fi * gj
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = f._zero()
    return SkewPoly([zero if c is None else c for c in out])


def identity_like(c) -> SkewPoly:
    return SkewPoly([c.const(1)])


class DrinfeldModule:
    """A Drinfeld module given by the image of T; phi_a is cached per a."""

    def __init__(self, phi_T: SkewPoly | Sequence):
        if not isinstance(phi_T, SkewPoly):
            phi_T = SkewPoly(phi_T)
        if phi_T.degree < 1:
            raise ValueError("phi_T must have tau-degree >= 1")
        self.phi_T = phi_T
        self._cache: dict[tuple, SkewPoly] = {}
        self._powers = [identity_like(phi_T.coeffs[0]), phi_T]

    @classmethod
    def rank2(cls, gamma_T, g, delta) -> DrinfeldModule:
        if _is_zero(delta):
            raise ValueError("Delta must be nonzero for a rank-2 module")
        return cls(SkewPoly([gamma_T, g, delta]))

    @classmethod
    def carlitz(cls, gamma_T) -> DrinfeldModule:
        return cls(SkewPoly([gamma_T, gamma_T.const(1)]))

    @property
    def rank(self) -> int:
        return self.phi_T.degree

    @property
    def gamma(self):
        return self.phi_T[0]

    @property
    def g(self):
        return self.phi_T[1]

    @property
    def delta(self):
        if self.rank != 2:
            raise ValueError("Delta is defined for rank-2 modules")
        return self.phi_T[2]

    def power(self, k: int) -> SkewPoly:
        """phi_{T^k}, memoized."""
        while len(self._powers) <= k:
            self._powers.append(skew_compose(self._powers[-1], self.phi_T))
        return self._powers[k]

    def __call__(self, a: Poly) -> SkewPoly:
        return phi_of_a(self, a)

    def conjugate(self, c) -> DrinfeldModule:
        """c o phi o c^(-1): coefficient of X^(q^i) scales by c^(1 - q^i)."""
        cinvpow = c.inverse() if hasattr(c, "inverse") else 1 / c
        out = []
        for coeff in self.phi_T.coeffs:
            out.append(c * coeff * cinvpow)
            cinvpow = cinvpow.frob()
        return DrinfeldModule(SkewPoly(out))

    def __repr__(self) -> str:
        return f"DrinfeldModule(phi_T = {self.phi_T})"


def phi_of_a(phi: DrinfeldModule, a: Poly) -> SkewPoly:
    """phi_a by Horner in T: (((a_n) o phi_T + a_{n-1}) o phi_T + ...)."""
    key = (a.field.q, a.c)
    hit = phi._cache.get(key)
    if hit is not None:
        return hit
    zero = phi.gamma.const(0)
    if a.is_zero():
        result = SkewPoly([zero])
    else:
        F = a.field
        result = SkewPoly([zero.const(FqElem(F, a.c[-1]))])
        for code in reversed(a.c[:-1]):
            result = skew_compose(result, phi.phi_T)
            if code:
                result = result + SkewPoly([zero.const(FqElem(F, code))])
    phi._cache[key] = result
    return result


@functools.lru_cache(maxsize=None)
def carlitz_over_K(q: int) -> DrinfeldModule:
    return DrinfeldModule.carlitz(RatFun.gen(q, "T"))


def f_polynomial(a: Poly, rho: DrinfeldModule | None = None) -> dict[int, object]:
    """Sparse f_a(X) = X^(q^d) rho_a(1/X) as {exponent: coefficient}.

    For monic a the constant term is 1; for general nonzero a it is lc(a).
    """
    if a.is_zero():
        raise ValueError("f_a is defined for nonzero a")
    q = a.field.q
    rho = rho or carlitz_over_K(q)
    ra = phi_of_a(rho, a)
    d = a.degree
    return {q**d - q**i: c for i, c in enumerate(ra.coeffs) if not _is_zero(c)}


def determinant_module(phi: DrinfeldModule) -> DrinfeldModule:
    """psi_T = gamma(T) X - Delta X^q."""
    if phi.rank != 2:
        raise ValueError("the determinant module is defined here for rank 2")
    return DrinfeldModule(SkewPoly([phi.gamma, -phi.delta]))


def moore_det(xs: Sequence):
    """det(x_i^(q^(j-1))) by permutation expansion (no division needed)."""
    n = len(xs)
    if n == 0:
        raise ValueError("Moore determinant of an empty family")
    rows = []
    for x in xs:
        row = [x]
        for _ in range(n - 1):
            row.append(row[-1].frob())
        rows.append(row)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for perm in permutations(range(n)):
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        if _perm_sign(perm) < 0:
            term = -term
        total = term if total is None else total + term
    return total


def moore_product(xs: Sequence):
    """prod_i prod_{c in F_q^(i-1)} (x_i + c_1 x_1 + ... + c_(i-1) x_(i-1)).

    Equal to moore_det(xs); coefficients c run over F_q as FqElem.
    """
    if not xs:
        raise ValueError("Moore product of an empty family")
    field = xs[0].field
    scalars = getattr(field, "base", field).elements()
    total = None
    for i, x in enumerate(xs):
        for cs in product(scalars, repeat=i):
            term = x
            for c, y in zip(cs, xs[:i]):
                if not c.is_zero():
                    term = term + y * c
            total = term if total is None else total * term
    return total


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def weil_pairing(phi: DrinfeldModule, a: Poly, x, y):
    """sum_{i=0}^{n-1} sum_{j=0}^{n-i-1} a_{i+j+1} M(phi_{T^j}(x), phi_{T^i}(y)).

    phi_{T^k}(x) values are computed once by iterating phi_T.
    """
    n = a.degree
    zero = x.const(0) * x
    if n <= 0:
        return zero
    xs, ys = [x], [y]
    for _ in range(n - 1):
        xs.append(phi.phi_T(xs[-1]))
        ys.append(phi.phi_T(ys[-1]))
    total = zero
    for i in range(n):
        for j in range(n - i):
            coeff = a.c[i + j + 1] if i + j + 1 < len(a.c) else 0
            if not coeff:
                continue
            m = moore_det([xs[j], ys[i]])
            total = total + (m * FqElem(a.field, coeff) if coeff != 1 else m)
    return total
