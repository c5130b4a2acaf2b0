"""Weighted points [g : h], decorated pairs (phi, lambda) and the j~ invariant.

A decorated pair over F = F_{q^n} is a rank-2 module phi_T = gamma X + g X^q
+ Delta X^(q^2) together with a nonzero root lambda of the determinant module
psi_T = gamma X - Delta X^q, i.e. Delta lambda^(q-1) = gamma.  lambda and the
fixed root lambda_T of X^(q-1) = -gamma live in the ambient field
E = F_{q^(n(q-1))}, which contains a (q-1)th root of every element of F.

Isomorphisms act by g' = c^(1-q) g, Delta' = c^(1-q^2) Delta and
lambda' = eps c^(q+1) lambda with eps a nonzero square of F_q; this is the
action under which j~ = (lambda/lambda_T)^((q-1)/2) g^((q+1)/2) is invariant.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactfield import ExtElem, ExtField, FqElem, gf, make_extension
from .exactfield import poly as P
from .series import delta_from_h, g_aexpansion, h_product, identity_report
from .skew import DrinfeldModule, determinant_module
from .torsionlab import embedding

SCAN_LIMIT = 3**10


class ModuliError(ValueError):
    pass


class ModuliCtx:
    """Base field F = F_{q^n}, gamma(T), ambient E and lambda_T in E."""

    def __init__(self, q: int, n: int, gammaT=None, ext_degree: int | None = None):
        self.q, self.n = q, n
        self.F = make_extension(q, n)
        if gammaT is None:
            gammaT = self.F.gen() if n > 1 else self.F.one()
        self.gammaF = gammaT if isinstance(gammaT, ExtElem) else self.F(gammaT)
        if self.gammaF.is_zero():
            raise ModuliError("gamma(T) must be nonzero")
        e = ext_degree if ext_degree is not None else max(1, q - 1)
        self.E = make_extension(q, n * e)
        self.embed = embedding(self.F, self.E)
        self.gamma = self.embed(self.gammaF)
        roots = [x for x in self._roots_of_power(q - 1, -self.gamma)]
        if not roots:
            raise ModuliError("no (q-1)th root of -gamma(T) in the ambient field")
        self.lamT = roots[0]
        self.squares = gf(q).squares()

    def _roots_of_power(self, k: int, r: ExtElem) -> list[ExtElem]:
        """All x in E with x^k = r, ordered by index (exhaustive over E)."""
        if self.E.order > SCAN_LIMIT:
            raise ModuliError(f"ambient field F_{self.E.order} too large to scan")
        return [x for x in self.E.elements() if not x.is_zero() and x**k == r]

    def fmt_F(self, x: ExtElem) -> str:
        return str(x)

    def fmt_E(self, x: ExtElem) -> str:
        return P.format_poly(self.E.base, x.c, "y")

    def F_in_E(self) -> dict:
        """Embedded image of F, keyed by E-element, with the F-element as value."""
        return {self.embed(x): x for x in self.F.elements()}


@dataclass(frozen=True)
class WeightedPoint:
    """[g : h] in P(q-1, q+1); coordinates in one field."""

    g: ExtElem
    h: ExtElem

    def __post_init__(self):
        if self.g.is_zero() and self.h.is_zero():
            raise ModuliError("[0 : 0] is not a point")

    def scaled(self, alpha: ExtElem) -> WeightedPoint:
        q = self.g.field.q
        return WeightedPoint(alpha ** (q - 1) * self.g, alpha ** (q + 1) * self.h)

    def __str__(self) -> str:
        return f"[{self.g} : {self.h}]"


@dataclass(frozen=True)
class DecoratedPair:
    """(phi, lambda) with all data in the ambient field E."""

    g: ExtElem
    delta: ExtElem
    lam: ExtElem
    ctx: ModuliCtx

    def __post_init__(self):
        if self.delta.is_zero() or self.lam.is_zero():
            raise ModuliError("Delta and lambda must be nonzero")

    @property
    def phi(self) -> DrinfeldModule:
        return DrinfeldModule.rank2(self.ctx.gamma, self.g, self.delta)

    @property
    def psi(self) -> DrinfeldModule:
        return determinant_module(self.phi)

    def is_valid(self) -> bool:
        return self.psi.phi_T(self.lam).is_zero()

    def key(self) -> tuple:
        return (self.g.c, self.delta.c, self.lam.c)

    def describe(self) -> dict:
        c = self.ctx
        return {"g": c.fmt_E(self.g), "delta": c.fmt_E(self.delta), "lambda": c.fmt_E(self.lam)}


def j_of_pair(p: DecoratedPair) -> ExtElem:
    q = p.ctx.q
    return p.g ** (q + 1) / p.delta


def jtilde_of_pair(p: DecoratedPair) -> ExtElem:
    """(lambda/lambda_T)^((q-1)/2) g^((q+1)/2) for odd q; j itself for even q."""
    q = p.ctx.q
    if q % 2 == 0:
        return j_of_pair(p)
    if p.g.is_zero():
        return p.g
    return (p.lam / p.ctx.lamT) ** ((q - 1) // 2) * p.g ** ((q + 1) // 2)


def pair_from_point(ctx: ModuliCtx, pt: WeightedPoint) -> DecoratedPair:
    """phi_T = gamma X + g X^q - h^(q-1) X^(q^2), lambda = lambda_T / h."""
    if pt.h.is_zero():
        raise ModuliError("h = 0: outside the affine part h != 0")
    g, h = _to_E(ctx, pt.g), _to_E(ctx, pt.h)
    q = ctx.q
    return DecoratedPair(g, -(h ** (q - 1)), ctx.lamT / h, ctx)


def point_from_pair(p: DecoratedPair) -> WeightedPoint:
    """Inverse construction: h = lambda_T / lambda, so -h^(q-1) = Delta."""
    h = p.ctx.lamT / p.lam
    return WeightedPoint(p.g, h)


def _to_E(ctx: ModuliCtx, x: ExtElem) -> ExtElem:
    if x.field is ctx.E:
        return x
    if x.field is ctx.F:
        return ctx.embed(x)
    raise ModuliError("coordinate in an unrelated field")


# weighted projective equivalence

def _bezout(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        return 1, 0
    x, y = _bezout(b, a % b)
    return y, x - (a // b) * y


def weighted_eq(p1: WeightedPoint, p2: WeightedPoint, ext_bound: int = 2) -> dict:
    """Equivalence over the algebraic closure, with a witness alpha when one is found.

    The decision is algebraic; the witness is searched exhaustively in
    F_{q^(nm)}, m <= ext_bound.  status is "equivalent", "inequivalent" or
    "undecided" (equivalent in theory is never reported without either proof
    or witness).
    """
    K = p1.g.field
    if p2.g.field is not K:
        raise ModuliError("points over different fields")
    q = K.q
    g1, h1, g2, h2 = p1.g, p1.h, p2.g, p2.h
    if g1.is_zero() != g2.is_zero() or h1.is_zero() != h2.is_zero():
        return {"status": "inequivalent", "reason": "zero pattern differs", "witness": None}
    rg = g2 / g1 if not g1.is_zero() else None
    rh = h2 / h1 if not h1.is_zero() else None
    if rg is not None and rh is not None:
        s = rh / rg
        if q % 2:
            exists = s ** ((q - 1) // 2) == rg
        else:
            alpha = s ** (K.order // 2)
            exists = alpha ** (q - 1) == rg
    else:
        exists = True
    witness, field_desc, scanned_all = _scan_alpha(K, rg, rh, ext_bound)
    if exists and witness is None:
        return {"status": "undecided", "reason": "no witness within the extension bound",
                "witness": None, "scanned": field_desc}
    if not exists and witness is not None:
        raise AssertionError("witness found for points proven inequivalent")
    out = {"status": "equivalent" if exists else "inequivalent", "witness": witness,
           "scanned": field_desc}
    if witness is not None:
        out["witness_str"] = P.format_poly(witness.field.base, witness.c, "y")
    return out


def _scan_alpha(K: ExtField, rg, rh, ext_bound: int):
    q = K.q
    for m in range(1, ext_bound + 1):
        L = make_extension(q, K.n * m)
        if L.order > SCAN_LIMIT:
            return None, f"F_{q}^{K.n * (m - 1)}", False
        emb = embedding(K, L)
        rgL = emb(rg) if rg is not None else None
        rhL = emb(rh) if rh is not None else None
        for a in L.elements():
            if a.is_zero():
                continue
            if rhL is not None and a ** (q + 1) != rhL:
                continue
            if rgL is not None and a ** (q - 1) != rgL:
                continue
            return a, f"F_{q}^{K.n * m}", True
    return None, f"F_{q}^{K.n * ext_bound}", True


# isomorphisms of decorated pairs

def act(p: DecoratedPair, c: ExtElem, eps: FqElem) -> DecoratedPair:
    q = p.ctx.q
    ci = c.inverse()
    return DecoratedPair(ci ** (q - 1) * p.g, ci ** (q * q - 1) * p.delta,
                         c ** (q + 1) * p.lam * eps, p.ctx)


def iso_witness(p1: DecoratedPair, p2: DecoratedPair) -> dict:
    """Search c in E^* and eps in F_q^{*2} with act(p1, c, eps) = p2.

    Pairs with g1 = g2 = 0 are isomorphic by convention (witness None).
    """
    if p1.g.is_zero() and p2.g.is_zero():
        return {"isomorphic": True, "witness": None, "reason": "g = 0 on both sides"}
    if p1.g.is_zero() != p2.g.is_zero():
        return {"isomorphic": False, "witness": None}
    E = p1.ctx.E
    for c in E.elements():
        if c.is_zero():
            continue
        for eps in p1.ctx.squares:
            if act(p1, c, eps).key() == p2.key():
                return {"isomorphic": True, "witness": (c, eps)}
    return {"isomorphic": False, "witness": None, "scanned": f"F_{E.order}"}


def enumerate_pairs(ctx: ModuliCtx) -> list[DecoratedPair]:
    """All (g, Delta, lambda): g in F, Delta in F^*, lambda in E with Delta lambda^(q-1) = gamma."""
    q = ctx.q
    Fel = list(ctx.F.elements())
    pow_table: dict = {}
    for x in ctx.E.elements():
        if not x.is_zero():
            pow_table.setdefault(x ** (q - 1), []).append(x)
    out = []
    for gF in Fel:
        g = ctx.embed(gF)
        for dF in Fel:
            if dF.is_zero():
                continue
            d = ctx.embed(dF)
            for lam in pow_table.get(ctx.gamma / d, []):
                out.append(DecoratedPair(g, d, lam, ctx))
    return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def classify_by_jtilde(q: int, n: int, gammaT=None, ext_degree: int | None = None) -> dict:
    """Partition all decorated pairs over F_{q^n} by isomorphism and by j~, and compare."""
    ctx = ModuliCtx(q, n, gammaT, ext_degree)
    pairs = enumerate_pairs(ctx)
    index = {p.key(): i for i, p in enumerate(pairs)}
    uf = _UnionFind(len(pairs))
    witnesses = {}
    zero_g = [i for i, p in enumerate(pairs) if p.g.is_zero()]
    for i in zero_g[1:]:
        uf.union(zero_g[0], i)
    units = [c for c in ctx.E.elements() if not c.is_zero()]
    for i, p in enumerate(pairs):
        if p.g.is_zero():
            continue
        for c in units:
            for eps in ctx.squares:
                j = index.get(act(p, c, eps).key())
                if j is not None and j != i:
                    if uf.find(i) != uf.find(j):
                        witnesses[(i, j)] = (c, eps)
                    uf.union(i, j)
    jt = [jtilde_of_pair(p) for p in pairs]
    classes: dict[int, list[int]] = {}
    for i in range(len(pairs)):
        classes.setdefault(uf.find(i), []).append(i)

    # iso => same j~
    iso_breaks = [[i, j] for members in classes.values() for i in members for j in members[:1]
                  if jt[i] != jt[j]]
    # same j~ (g != 0) => iso
    by_jt: dict = {}
    for i, v in enumerate(jt):
        by_jt.setdefault(v.c, set()).add(uf.find(i))
    undecided = [ctx.fmt_E(pairs[next(i for i in range(len(pairs)) if jt[i].c == key)].g)
                 for key, roots in by_jt.items() if len(roots) > 1]
    jt_zero_is_g_zero = all((jt[i].is_zero()) == pairs[i].g.is_zero() for i in range(len(pairs)))

    # pointwise j~^2 against j
    minus_one = ctx.E(-1)
    sq_eq_j = all(jt[i] ** 2 == j_of_pair(p) for i, p in enumerate(pairs))
    sq_eq_minus_j = all(jt[i] ** 2 == j_of_pair(p) * minus_one for i, p in enumerate(pairs))
    # double cover: over each j-value the j~ values are {+-j~}, one value above 0
    by_j: dict = {}
    for i, p in enumerate(pairs):
        by_j.setdefault(j_of_pair(p).c, set()).add(jt[i].c)
    if q % 2:
        cover_ok = all((len(v) == 1) if not key else (len(v) == 2) for key, v in by_j.items())
    else:
        cover_ok = all(len(v) == 1 for v in by_j.values())
    valid = all(p.is_valid() for p in pairs)
    from_points = all(pair_from_point(ctx, point_from_pair(p)).key() == p.key() for p in pairs)

    reps = []
    for root in sorted(classes, key=lambda r: (jt[r].index(), r)):
        p = pairs[root]
        reps.append({"jtilde": ctx.fmt_E(jt[root]), "size": len(classes[root]), **p.describe()})
    coord_ok = all(jt[i] == _coord_jtilde(point_from_pair(p)) for i, p in enumerate(pairs))
    checks = [
        _chk("pairs-valid", valid, True),
        _chk("iso-implies-same-jtilde", not iso_breaks, True),
        _chk("same-jtilde-implies-iso", not undecided, True, undecided=undecided),
        _chk("jtilde-zero-iff-g-zero", jt_zero_is_g_zero, True),
        _chk("double-cover", cover_ok, True),
        _chk("pairs-from-points", from_points, True),
        _chk("jtilde-matches-coordinates", coord_ok, True),
    ]
    if q % 2:
        checks.append(_chk("jtilde-squared-equals-j", sq_eq_j, True,
                           note="pointwise; for odd q j~^2 = -j, see jtilde-squared-equals-minus-j"))
        checks.append(_chk("jtilde-squared-equals-minus-j", sq_eq_minus_j, False))
    else:
        same = all(jt[i] == j_of_pair(p) for i, p in enumerate(pairs))
        checks.append(_chk("jtilde-equals-j", same, True, note="q even: j~ is j"))
    status = "pass" if all(c["status"] == "pass" for c in checks if c["required"]) else "fail"
    if undecided:
        status = "undecided"
    return {
        "schema": 1, "lab": "moduli", "q": q, "n": n,
        "base_field": f"F_{q}^{n}",
        "base_modulus": P.format_poly(ctx.F.base, ctx.F.modulus, "x"),
        "ambient_field": f"F_{q}^{ctx.E.n}",
        "ambient_modulus": P.format_poly(ctx.E.base, ctx.E.modulus, "y"),
        "gammaT": ctx.fmt_F(ctx.gammaF),
        "lambdaT": ctx.fmt_E(ctx.lamT),
        "isomorphism_convention": "lambda' = eps c^(q+1) lambda",
        "pairs": len(pairs),
        "class_count": len(classes),
        "jtilde_values": len(by_jt),
        "classes": reps,
        "witness_count": len(witnesses),
        "undecided": undecided,
        "checks": checks,
        "status": status,
    }


def _coord_jtilde(pt: WeightedPoint) -> ExtElem:
    """g^((q+1)/2) / h^((q-1)/2) for odd q, g^(q+1) / h^(q-1) for even q."""
    q = pt.g.field.q
    if q % 2:
        return pt.g ** ((q + 1) // 2) / pt.h ** ((q - 1) // 2)
    return pt.g ** (q + 1) / pt.h ** (q - 1)


def _chk(name: str, ok: bool, required: bool, **extra) -> dict:
    out = {"name": name, "status": "pass" if ok else "fail", "required": required}
    out.update(extra)
    return out


def jtilde_series(q: int, N: int):
    """(j~, j, m) as Laurent series in t from the level-one g and h, known at least below t^N."""
    if N < 2:
        raise ModuliError("order N must be >= 2")
    work = N + 2 * q + 2
    h = h_product(q, work)
    g = g_aexpansion(q, work)
    m = (q - 1) // 2 if q % 2 else q - 1
    e = (q + 1) // 2 if q % 2 else q + 1
    jt = g ** e / h ** m
    j = g ** (q + 1) / delta_from_h(h)
    return jt, j, m


def jtilde_series_check(q: int, N: int) -> dict:
    """j~ = g^(m(q+1)/(q-1)) / h^m from the level-one g and h, against j = g^(q+1)/Delta."""
    jt, j, m = jtilde_series(q, N)
    checks = []
    val_ok = not jt.is_zero() and jt.val == -m
    checks.append({"identity": "pole-order", "status": "pass" if val_ok else "fail",
                   "valuation": None if jt.is_zero() else int(jt.val), "expected": -m,
                   "first_failing_exponent": None, "compared_below": N})
    if q % 2:
        checks.append(identity_report("jtilde-squared-equals-j", jt * jt, j, N))
        checks.append(identity_report("jtilde-squared-equals-minus-j", jt * jt, -j, N))
    else:
        checks.append(identity_report("jtilde-equals-j", jt, j, N))
    for c in checks:
        c["required"] = c["identity"] != "jtilde-squared-equals-minus-j"
    return {
        "schema": 1, "suite": "jtilde-series", "q": q, "order": N, "m": m,
        "variable": "t", "field": f"F_{q}(T)",
        "fitted": {},
        "checks": checks,
        "status": "pass" if all(c["status"] == "pass" for c in checks if c["required"]) else "fail",
    }


__all__ = [
    "DecoratedPair", "ModuliCtx", "ModuliError", "WeightedPoint", "act", "classify_by_jtilde",
    "enumerate_pairs", "iso_witness", "j_of_pair", "jtilde_of_pair", "jtilde_series", "jtilde_series_check",
    "pair_from_point", "point_from_pair", "weighted_eq",
]
