"""Degree-1 Kummer level fields F_q(l) with l^(q-1) = -a.

For a = T + theta the field F_q(T)(l) is the rational function field F_q(l):
T is recovered as -l^(q-1) - theta.  Elements are plain :class:`RatFun`
objects in the symbol ``l``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fq import FqElem
from .poly import Poly
from .ratfun import RatFun

LAMBDA = "l"


@dataclass(frozen=True, eq=False)
class KummerField:
    """Context for F_q(l_a); ``embed`` maps F_q(T) into it."""

    a: Poly

    def __post_init__(self):
        if self.a.var != "T":
            raise ValueError("level must be a polynomial in T")
        if self.a.degree != 1 or not self.a.is_monic():
            raise ValueError(f"only monic degree-1 levels are supported, got a = {self.a}")

    @property
    def q(self) -> int:
        return self.a.field.q

    @property
    def theta(self) -> FqElem:
        return self.a.coeff(0)

    @property
    def lam(self) -> RatFun:
        return RatFun.gen(self.q, LAMBDA)

    @property
    def T(self) -> RatFun:
        """Image of T, namely -l^(q-1) - theta."""
        l = Poly.gen(self.q, LAMBDA)
        return RatFun(-(l ** (self.q - 1)) - self.theta)

    def embed(self, x) -> RatFun:
        """Image of an element of F_q, A or K."""
        if isinstance(x, (int, FqElem)):
            return self.lam.const(x)
        if isinstance(x, Poly):
            x = RatFun(x)
        if not isinstance(x, RatFun) or x.var != "T":
            raise TypeError(f"cannot embed {x!r} into F_q(l)")
        return x.substitute(self.T)

    def element(self, x) -> RatFun:
        if isinstance(x, RatFun) and x.var == LAMBDA:
            return x
        return self.embed(x)

    def __repr__(self) -> str:
        return f"KummerField(a={self.a}, q={self.q})"


def kummer_field(a: Poly) -> KummerField:
    """Level field for a monic degree-1 a; other levels raise ValueError."""
    return KummerField(a)
