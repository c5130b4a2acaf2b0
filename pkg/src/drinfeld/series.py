"""Truncated Laurent series with explicit precision, and the level-1 forms.

A :class:`TruncSeries` stores coefficients c_v, c_{v+1}, ... in a list
starting at the valuation v together with an absolute precision N: the series
is known modulo t^N.  ``N = math.inf`` marks an exact (finite) series such as
a polynomial.  Coefficients can be any exact ring element offering
``is_zero``, ``frob`` and the arithmetic operators (RatFun in practice).

The level-1 forms never involve the Carlitz period: with t = 1/(pi e_A(z)) one
has 1/t(az) = rho_a(1/t), so t(az) = t^(q^d)/f_a(t), and every identity below
is rewritten in terms of t.
"""
from __future__ import annotations

import math
from typing import Callable, Iterable

from .exactfield import FqElem, Poly, RatFun, enumerate_monics, monics_of_degree
from .skew import f_polynomial

INF = math.inf


class SeriesError(ValueError):
    pass


def _nz(c) -> bool:
    return not c.is_zero()


class TruncSeries:
    """sum_{i >= v} c_i var^i + O(var^prec); immutable."""

    __slots__ = ("coeffs", "val", "prec", "var", "zero")

    def __init__(self, coeffs: Iterable, val: int = 0, prec=INF, var: str = "t", zero=None):
        coeffs = list(coeffs)
        if zero is None:
            if not coeffs:
                raise SeriesError("need a zero element to build an empty series")
            zero = coeffs[0].const(0)
        self.zero, self.var = zero, var
        if prec != INF and val + len(coeffs) > prec:
            coeffs = coeffs[: max(0, prec - val)]
        start = 0
        while start < len(coeffs) and coeffs[start].is_zero():
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1].is_zero():
            end -= 1
        self.coeffs = coeffs[start:end]
        if self.coeffs:
            self.val = val + start
        else:
            # zero to the known precision: the valuation is only bounded below by prec
            self.val = prec
        self.prec = prec

    # construction helpers
    @classmethod
    def from_dict(cls, terms: dict, prec=INF, var: str = "t", zero=None) -> TruncSeries:
        terms = {e: c for e, c in terms.items() if not c.is_zero() and e < prec}
        if zero is None:
            zero = next(iter(terms.values())).const(0)
        if not terms:
            return cls([], 0, prec, var, zero)
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, zero) for e in range(lo, hi + 1)], lo, prec, var, zero)

    @classmethod
    def monomial(cls, c, e: int, prec=INF, var: str = "t") -> TruncSeries:
        return cls([c], e, prec, var, c.const(0))

    def _like(self, coeffs, val, prec) -> TruncSeries:
        return TruncSeries(coeffs, val, prec, self.var, self.zero)

    def const(self, c) -> TruncSeries:
        """Exact constant series (lets skew/Moore code treat series as a ring)."""
        if isinstance(c, TruncSeries):
            return c
        return self._like([self.zero + c], 0, INF)

    def one(self) -> TruncSeries:
        return self.const(1)

    # basic data
    @property
    def rel_prec(self):
        return self.prec - self.val

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return self.prec == INF

    def __getitem__(self, e: int):
        if e >= self.prec:
            raise SeriesError(f"coefficient of {self.var}^{e} is beyond the precision {self.prec}")
        if not self.coeffs or e < self.val or e >= self.val + len(self.coeffs):
            return self.zero
        return self.coeffs[e - self.val]

    def leading(self):
        if not self.coeffs:
            raise SeriesError("zero series has no leading coefficient")
        return self.coeffs[0]

    def items(self):
        """(exponent, coefficient) for the nonzero coefficients."""
        return [(self.val + i, c) for i, c in enumerate(self.coeffs) if _nz(c)]

    def support(self) -> list[int]:
        return [e for e, _ in self.items()]

    def truncate(self, prec) -> TruncSeries:
        if prec >= self.prec:
            return self
        return self._like(self.coeffs, self.val, prec)

    def map_coeffs(self, fn: Callable, zero=None) -> TruncSeries:
        zero = fn(self.zero) if zero is None else zero
        return TruncSeries([fn(c) for c in self.coeffs], self.val if self.coeffs else 0,
                           self.prec, self.var, zero)

    def with_var(self, var: str) -> TruncSeries:
        return TruncSeries(self.coeffs, self.val if self.coeffs else 0, self.prec, var, self.zero)

    def _check(self, other: TruncSeries):
        if other.var != self.var:
            raise SeriesError(f"mixing series in {self.var} and {other.var}")

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        if isinstance(other, (int, FqElem, RatFun, Poly)) or hasattr(other, "frob"):
            return self.const(other)
        return None

    # ring operations
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        if not self.coeffs:
            return o.truncate(prec)
        if not o.coeffs:
            return self.truncate(prec)
        lo = min(self.val, o.val)
        hi = max(self.val + len(self.coeffs), o.val + len(o.coeffs))
        if prec != INF:
            hi = min(hi, prec)
        if hi <= lo:
            return self._like([], 0, prec)
        out = [self.zero] * (hi - lo)
        for src in (self, o):
            off = src.val - lo
            for i, c in enumerate(src.coeffs):
                if off + i >= len(out):
                    break
                out[off + i] = out[off + i] + c
        return self._like(out, lo, prec)

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs], self.val if self.coeffs else 0, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FqElem, RatFun, Poly)):
            if isinstance(other, int):
                other = self.zero.const(other)
            if other.is_zero():
                return self._like([], 0, self.prec)
            return self._like([x * other for x in self.coeffs], self.val if self.coeffs else 0, self.prec)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mul(self, o)

    __rmul__ = __mul__

    def shift(self, k: int) -> TruncSeries:
        """Multiply by var^k."""
        if not self.coeffs:
            return self._like([], 0, self.prec + k)
        return self._like(self.coeffs, self.val + k, self.prec + k)

    def inverse(self, order=None) -> TruncSeries:
        """1/f; ``order`` caps the absolute precision when f is exact."""
        return _div(self.one(), self, order)

    def __truediv__(self, other):
        if isinstance(other, (int, FqElem, RatFun, Poly)):
            if isinstance(other, int):
                other = self.zero.const(other)
            return self * other.inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _div(self, o, None)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _div(o, self, None)

    def div(self, other: TruncSeries, order=None) -> TruncSeries:
        return _div(self, other, order)

    def __pow__(self, n: int) -> TruncSeries:
        if n < 0:
            return self.inverse() ** (-n)
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frob(self) -> TruncSeries:
        """f^q = sum c_i^q t^(qi) in characteristic p."""
        q = self.zero.field.q
        if not self.coeffs:
            return self._like([], 0, self.prec * q)
        terms = {q * e: c.frob() for e, c in self.items()}
        return TruncSeries.from_dict(terms, self.prec * q, self.var, self.zero)

    def derivative(self) -> TruncSeries:
        terms = {e - 1: c * e for e, c in self.items() if e % self.zero.field.p}
        return TruncSeries.from_dict(terms, self.prec - 1, self.var, self.zero)

    def eq_upto(self, other: TruncSeries, prec=None) -> bool:
        return first_difference(self, other, prec) is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            o = self._coerce(other)
            if o is None:
                return NotImplemented
            other = o
        if other.var != self.var:
            return False
        return first_difference(self, other) is None

    __hash__ = None

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"TruncSeries({self})"


def _mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    zero = f.zero
    if not f.coeffs or not g.coeffs:
        # product of a series known to be O(t^a) with one of valuation >= b
        fv = f.val if f.coeffs else f.prec
        gv = g.val if g.coeffs else g.prec
        prec = min(f.prec + gv, g.prec + fv)
        return f._like([], 0, prec)
    val = f.val + g.val
    rel = min(f.rel_prec, g.rel_prec)
    length = len(f.coeffs) + len(g.coeffs) - 1
    if rel != INF:
        length = min(length, rel)
    fn = [(i, c) for i, c in enumerate(f.coeffs[:length]) if _nz(c)]
    gn = [(j, c) for j, c in enumerate(g.coeffs[:length]) if _nz(c)]
    if len(fn) > len(gn):
        fn, gn = gn, fn
    out = [None] * length
    for i, a in fn:
        lim = length - i
        for j, b in gn:
            if j >= lim:
                break
            k = i + j
            t = a * b
            out[k] = t if out[k] is None else out[k] + t
    prec = val + rel if rel != INF else INF
    return f._like([zero if c is None else c for c in out], val, prec)


def _div(f: TruncSeries, g: TruncSeries, order) -> TruncSeries:
    """f/g by the power-series recurrence; relative precision is min of the two."""
    f._check(g)
    if not g.coeffs:
        raise SeriesError("division by a series that is zero to its precision")
    zero = f.zero
    if not f.coeffs:
        prec = f.prec - g.val
        if order is not None:
            prec = min(prec, order)
        if prec == INF:
            return f._like([], 0, INF)
        return f._like([], 0, prec)
    val = f.val - g.val
    rel = min(f.rel_prec, g.rel_prec)
    if order is not None:
        rel = min(rel, order - val)
    if rel == INF:
        raise SeriesError("exact division needs an explicit order")
    rel = max(rel, 0)
    g0inv = g.coeffs[0].inverse()
    gn = [(k, c) for k, c in enumerate(g.coeffs[:rel]) if k and _nz(c)]
    fc = f.coeffs
    out = []
    for n in range(rel):
        acc = fc[n] if n < len(fc) else None
        for k, c in gn:
            if k > n:
                break
            prev = out[n - k]
            if prev.is_zero():
                continue
            t = c * prev
            acc = -t if acc is None else acc - t
        out.append(zero if acc is None else acc * g0inv)
    return f._like(out, val, val + rel)


def first_difference(f: TruncSeries, g: TruncSeries, prec=None):
    """Smallest exponent below min precision where f and g differ, else None."""
    limit = min(f.prec, g.prec)
    if prec is not None:
        limit = min(limit, prec)
    d = f - g
    for e, c in d.items():
        if e < limit:
            return e
    return None


def identity_report(name: str, lhs: TruncSeries, rhs: TruncSeries, N, **extra) -> dict:
    """Compare lhs and rhs below N; fails if either side is known to less than N."""
    reached = min(lhs.prec, rhs.prec)
    diff = first_difference(lhs, rhs, N)
    if diff is not None:
        status = "fail"
    elif reached < N:
        status = "fail"
        extra.setdefault("note", f"precision {reached} below requested {N}")
    else:
        status = "pass"
    out = {"identity": name, "status": status, "first_failing_exponent": diff,
           "compared_below": int(min(reached, N))}
    out.update(extra)
    return out


def fit_unit(lhs: TruncSeries, rhs: TruncSeries):
    """c with lhs = c * rhs judged from the leading terms; None if valuations differ."""
    if lhs.is_zero() or rhs.is_zero() or lhs.val != rhs.val:
        return None
    return lhs.leading() / rhs.leading()


def ts_arith(op: str, f: TruncSeries, g: TruncSeries | int | None = None) -> TruncSeries:
    """Dispatch by tag: add, sub, mul, div, pow (g an int) or deriv (g unused)."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    if op == "pow":
        return f ** g
    if op == "deriv":
        return f.derivative()
    raise ValueError(f"unknown series operation {op!r}")


def ts_compose_subst(f: TruncSeries, s: TruncSeries) -> TruncSeries:
    """f(s) for s of positive valuation; the result lives in s's variable.

    f = t^v * u(t) with u a power series; u(s) by Horner and s^v by powering
    (s^(-1) when v < 0).  f's coefficients must already lie in s's ring.
    """
    if not s.coeffs:
        raise SeriesError("cannot substitute a series that is zero to its precision")
    w = s.val
    if w < 1:
        raise SeriesError("substituted series must have positive valuation")
    if not f.coeffs:
        if f.prec == INF:
            return s._like([], 0, INF)
        return s._like([], 0, f.prec * w)
    v = f.val
    # u = f / t^v known to relative precision K; error term O(s^K) = O(t^(wK))
    K = f.rel_prec
    target = INF if K == INF else w * K
    if s.prec != INF:
        # u(s) is only as good as s itself: s + O(t^P) gives errors O(t^P)
        target = min(target, s.prec)
    if target == INF:
        raise SeriesError("exact substitution into an exact series is not supported")
    s_t = s.truncate(target)
    u = f.coeffs
    acc = s_t.const(u[-1]).truncate(target)
    for c in reversed(u[:-1]):
        acc = (acc * s_t).truncate(target)
        if _nz(c):
            acc = acc + s_t.const(c)
    acc = acc.truncate(target)
    if v == 0:
        return acc
    sv = s ** v if v > 0 else s.inverse() ** (-v)
    return acc * sv


# level-1 expansions ----------------------------------------------------------

def _zero_K(q: int) -> RatFun:
    return RatFun.gen(q, "T").zero()


def f_series(a: Poly, var: str = "t", rho=None, embed=None) -> TruncSeries:
    """f_a as an exact series in ``var``; ``embed`` maps coefficients."""
    terms = f_polynomial(a, rho)
    if embed is not None:
        terms = {e: embed(c) for e, c in terms.items()}
    return TruncSeries.from_dict(terms, INF, var)


def t_of_az(a: Poly, N: int) -> TruncSeries:
    """t(az) = t^(q^d)/f_a(t) modulo t^N (from 1/t(az) = rho_a(1/t))."""
    if a.is_zero() or not a.is_monic():
        raise ValueError("t_of_az needs a monic a")
    q, d = a.field.q, a.degree
    lead = q**d
    f = f_series(a)
    if lead >= N:
        return TruncSeries([], 0, N, "t", _zero_K(q))
    return f.inverse(order=N - lead).shift(lead)


def _monics_below(q: int, bound: Callable[[int], bool]):
    d = 0
    while bound(d):
        yield from monics_of_degree(q, d)
        d += 1


def h_product(q: int, N: int) -> TruncSeries:
    """h = -t * prod_{a monic} f_a(t)^(q^2 - 1) modulo t^N.

    With P = prod f_a (all factors with q^d - q^(d-1) < N), the product of the
    (q^2-1)th powers is Frob^2(P)/P; Frob here raises the whole series to the
    q-th power, which is coefficientwise in characteristic p.
    """
    if N < 2:
        raise ValueError("order N must be >= 2")
    M = N - 1
    zero = _zero_K(q)
    P = TruncSeries([zero.one()], 0, M, "t")
    for a in _monics_below(q, lambda d: d == 0 or q**d - q ** (d - 1) < N):
        if a.degree == 0:
            continue
        P = (P * f_series(a)).truncate(M)
    P2 = P.frob().frob().truncate(M)
    return -(P2 / P).shift(1)


def h_aexpansion(q: int, N: int) -> TruncSeries:
    """h = -sum_{a monic} a^q t(az), all a with q^deg(a) < N."""
    if N < 2:
        raise ValueError("order N must be >= 2")
    zero = _zero_K(q)
    acc = TruncSeries([], 0, N, "t", zero)
    for a in _monics_below(q, lambda d: q**d < N):
        acc = acc + t_of_az(a, N) * RatFun(a) ** q
    return -acc


def g_aexpansion(q: int, N: int) -> TruncSeries:
    """g = 1 - (T^q - T) sum_{a monic} t(az)^(q-1), modulo t^N.

    This is the weight q-1 Eisenstein series normalised to constant term 1;
    the cutoff (q-1) q^deg(a) < N drops only terms of valuation >= N.
    """
    if N < 1:
        raise ValueError("order N must be >= 1")
    zero = _zero_K(q)
    T = RatFun.gen(q, "T")
    acc = TruncSeries([], 0, N, "t", zero)
    for a in _monics_below(q, lambda d: (q - 1) * q**d < N):
        acc = acc + t_of_az(a, N) ** (q - 1)
    return (-(acc * (T**q - T))) + zero.one()


def delta_from_h(h: TruncSeries) -> TruncSeries:
    """Delta = -h^(q-1)."""
    q = h.zero.field.q
    return -(h ** (q - 1))


def serre_residual(g: TruncSeries, delta: TruncSeries, h: TruncSeries, kappa, sigma,
                   coeff=None) -> TruncSeries:
    """h - sigma * (-(1/kappa) v^2 g' + c (1/kappa) v^2 (Delta'/Delta) g), c = q-1 by default.

    d/dz = -(pi/kappa) v^2 d/dv for v = t (kappa = 1) or v = t_a (kappa = a);
    the period cancels against the normalisation of the Serre derivative.
    ``coeff`` overrides c (the weight-(q-1) normalisation k/(q^2-1) is 1 mod p).
    """
    if delta.is_zero():
        raise SeriesError("Delta vanishes to its precision")
    q = g.zero.field.q
    c = q - 1 if coeff is None else coeff
    kinv = kappa.inverse() if hasattr(kappa, "inverse") else g.zero.const(kappa).inverse()
    dlog = delta.derivative() / delta
    serre = (-(g.derivative().shift(2)) + (dlog * g).shift(2) * c) * kinv
    return h - serre * sigma


def serre_sign_fit(g, delta, h, kappa, coeff=None) -> dict:
    """Run both signs; exactly one distinct field element must give residual 0."""
    one = g.zero.one()
    signs = [one] if one == -one else [one, -one]
    results = []
    for s in signs:
        r = serre_residual(g, delta, h, kappa, s, coeff)
        nz = r.items()
        results.append({"sigma": s, "residual_zero": not nz,
                        "first_nonzero": nz[0][0] if nz else None,
                        "precision": r.prec})
    winners = [r["sigma"] for r in results if r["residual_zero"]]
    return {"results": results, "winners": winners, "ok": len(winners) == 1}


# checks ------------------------------------------------------------------

def is_integral(f: TruncSeries) -> bool:
    """Every coefficient is a polynomial (denominator 1)."""
    return all(c.is_integral() for c in f.coeffs)


def support_congruent(f: TruncSeries, residue: int, modulus: int) -> bool:
    if modulus == 1:
        return True
    return all((e - residue) % modulus == 0 for e in f.support())


def format_series(f: TruncSeries, max_terms: int | None = None) -> str:
    terms = []
    for e, c in f.items():
        cs = str(c)
        if e == 0:
            mono = ""
        elif e == 1:
            mono = f.var
        else:
            mono = f"{f.var}^{e}"
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        else:
            terms.append(f"({cs})*{mono}")
        if max_terms is not None and len(terms) >= max_terms:
            terms.append("...")
            break
    body = " + ".join(terms) if terms else "0"
    if f.prec != INF:
        body += f" + O({f.var}^{f.prec})"
    return body


def field_tag(c) -> str:
    if isinstance(c, RatFun):
        return f"F_{c.field.q}({c.var})"
    if isinstance(c, FqElem):
        return f"F_{c.field.q}"
    return type(c).__name__


def series_to_json(f: TruncSeries, field: str | None = None) -> dict:
    return {
        "variable": f.var,
        "truncation": None if f.prec == INF else int(f.prec),
        "field": field or field_tag(f.zero),
        "coefficients": [[e, str(c)] for e, c in f.items()],
    }


__all__ = [
    "INF", "SeriesError", "TruncSeries", "identity_report", "fit_unit", "ts_arith", "ts_compose_subst", "first_difference",
    "f_series", "t_of_az", "h_product", "h_aexpansion", "g_aexpansion", "delta_from_h",
    "serre_residual", "serre_sign_fit", "is_integral", "support_congruent",
    "format_series", "field_tag", "series_to_json", "enumerate_monics",
]
