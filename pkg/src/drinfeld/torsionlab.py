"""Drinfeld modules over finite A-fields, their torsion, and the Weil pairing.

An A-field here is F_{q^n} with a chosen image gamma(T).  The a-torsion of a
module phi is the kernel of the F_q-linear map phi_a on a splitting field
F_{q^{nk}}.  The splitting degree comes from tau-remainders: reducing X^(q^m)
modulo phi_a (on the left) gives X exactly when every root of phi_a lies in
F_{q^m}.  The kernel itself is then found by linear algebra over F_q.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .exactfield import (ExtElem, ExtField, FiniteField, FqElem, Poly, enumerate_monics, is_irreducible,
                         make_extension, polys_of_degree_below)
from .exactfield import poly as P
from .skew import DrinfeldModule, SkewPoly, determinant_module, moore_det, phi_of_a, weil_pairing

EXHAUSTIVE_LIMIT = 81


class BadLevelError(ValueError):
    """gamma(a) = 0: phi_a is inseparable and the level is rejected."""


class TorsionError(RuntimeError):
    pass


@dataclass(frozen=True)
class AField:
    """F_{q^n} with gamma(T) given."""

    field: ExtField
    gammaT: ExtElem

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.field.n

    def gamma(self, a: Poly) -> ExtElem:
        return a(self.gammaT)

    def bad_levels(self, dmax: int = 2) -> list[Poly]:
        """Monic a of degree 1..dmax with gamma(a) = 0."""
        return [a for a in enumerate_monics(self.q, dmax) if a.degree >= 1 and self.gamma(a).is_zero()]

    def module(self, g: ExtElem, delta: ExtElem) -> DrinfeldModule:
        return DrinfeldModule.rank2(self.gammaT, g, delta)

    def random_module(self, rng) -> DrinfeldModule:
        g = self.field.random(rng)
        delta = self.field.random(rng)
        while delta.is_zero():
            delta = self.field.random(rng)
        return self.module(g, delta)


def make_afield(q: int, n: int, gammaT) -> AField:
    K = make_extension(q, n)
    return AField(K, K(gammaT) if not isinstance(gammaT, ExtElem) else gammaT)


# linear algebra over F_q on code vectors

def _rref(F: FiniteField, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in rows]
    q = F.q
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv[rows[r][c]]
        rows[r] = [F.mul[x * q + inv] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub[x * q + F.mul[f * q + y]] for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(F: FiniteField, matrix: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : matrix v = 0} over F_q, in a deterministic order."""
    red, pivots = _rref(F, matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            if row[fc]:
                v[pc] = F.neg[row[fc]]
        basis.append(v)
    return basis


def linear_map_matrix(L: ExtField, fn) -> list[list[int]]:
    """Matrix (rows = output coordinates) of an F_q-linear map L -> L."""
    cols = [fn(ExtElem(L, P._trim([0] * i + [1]))).coords() for i in range(L.n)]
    return [[cols[c][r] for c in range(L.n)] for r in range(L.n)]


def kernel_basis(L: ExtField, fn) -> list[ExtElem]:
    vecs = nullspace(L.base, linear_map_matrix(L, fn), L.n)
    return [ExtElem(L, P._trim(list(v))) for v in vecs]


def span(basis: list[ExtElem], F: FiniteField) -> list[ExtElem]:
    """All F_q-combinations, indexed so that point i has base-q digits = coefficients."""
    if not basis:
        return []
    zero = basis[0].const(0)
    pts = [zero]
    for b in basis:
        mult = [b * FqC for FqC in _fq_elems(F)]
        pts = [p + m for m in mult for p in pts]
    return pts


def _fq_elems(F: FiniteField):
    return [FqElem(F, c) for c in range(F.q)]


def _coords_in_basis(F: FiniteField, basis: list[ExtElem], x: ExtElem) -> list[int] | None:
    """Coordinates of x in an F_q-independent family, None if x is outside the span."""
    n = basis[0].field.n
    rows = [[b.coords()[r] for b in basis] + [x.coords()[r]] for r in range(n)]
    red, pivots = _rref(F, rows)
    if len(basis) in pivots:
        return None
    sol = [0] * len(basis)
    for row, pc in zip(red, pivots):
        sol[pc] = row[-1]
    return sol


# embeddings and splitting fields

def embedding(K: ExtField, L: ExtField):
    """A field map F_{q^n} -> F_{q^{nk}}: send x to a root of K's modulus in L."""
    if L.n % K.n:
        raise ValueError("target degree must be a multiple of the source degree")
    if K.n == 1:
        return lambda e: ExtElem(L, e.c)
    sub = kernel_basis(L, lambda y: y.frob(K.n) - y)
    root = None
    for cand in span(sub, L.base):
        val = L.zero()
        for c in reversed(K.modulus):
            val = val * cand + ExtElem(L, (c,) if c else ())
        if val.is_zero():
            root = cand
            break
    if root is None:
        raise AssertionError("no root of the modulus in the fixed field")
    powers = [L.one()]
    for _ in range(1, K.n):
        powers.append(powers[-1] * root)

    def embed(e: ExtElem) -> ExtElem:
        acc = L.zero()
        for c, pw in zip(e.c, powers):
            if c:
                acc = acc + pw * _fq_elems(L.base)[c]
        return acc

    return embed


def splitting_degree(phi_a: SkewPoly, n: int, k_max: int) -> int | None:
    """Least k <= k_max with ker(phi_a) inside F_{q^{nk}}, by tau-remainders."""
    D = phi_a.degree
    p = phi_a.coeffs
    lead_inv = p[D].inverse()
    red = [-(c * lead_inv) for c in p[:D]]
    if D == 0:
        return 1
    zero = p[0].const(0)
    R = [zero] * D
    R[0] = zero.const(1)
    identity = list(R)
    for m in range(1, n * k_max + 1):
        top = R[-1].frob()
        R = [zero] + [c.frob() for c in R[:-1]]
        if not top.is_zero():
            R = [r + top * c for r, c in zip(R, red)]
        if m % n == 0 and R == identity:
            return m // n
    return None


@dataclass
class TorsionSpace:
    module: DrinfeldModule
    a: Poly
    ambient: ExtField
    k: int
    basis: list
    points: list
    module_L: DrinfeldModule = field(repr=False, default=None)
    embed: object = field(repr=False, default=None)

    @property
    def size(self) -> int:
        return len(self.points)


def base_field_of(phi: DrinfeldModule) -> ExtField:
    return phi.gamma.field


def lift_module(phi: DrinfeldModule, embed) -> DrinfeldModule:
    return DrinfeldModule(SkewPoly([embed(c) for c in phi.phi_T.coeffs]))


def torsion_space(phi: DrinfeldModule, a: Poly, k_max: int = 48, with_points: bool = True) -> TorsionSpace:
    """phi[a] over its splitting field F_{q^{nk}}, k <= k_max."""
    K = base_field_of(phi)
    gamma_a = a(phi.gamma)
    if gamma_a.is_zero():
        raise BadLevelError(f"gamma({a}) = 0: the level is not separable for this A-field")
    phi_a = phi_of_a(phi, a)
    k = splitting_degree(phi_a, K.n, k_max)
    if k is None:
        raise TorsionError(f"phi[{a}] is not rational over F_(q^(n*k)) for k <= {k_max}; increase k_max")
    L = make_extension(K.q, K.n * k)
    emb = embedding(K, L)
    phi_L = lift_module(phi, emb)
    phi_aL = phi_of_a(phi_L, a)
    basis = kernel_basis(L, phi_aL)
    expected = phi.rank * a.degree
    if len(basis) != expected:
        raise AssertionError(f"kernel of dimension {len(basis)}, expected {expected}")
    pts = span(basis, L.base) if with_points else []
    return TorsionSpace(phi, a, L, k, basis, pts, phi_L, emb)


def scan_torsion(phi: DrinfeldModule, a: Poly, k: int) -> list[ExtElem]:
    """Oracle: every root of phi_a in F_{q^{nk}} by exhaustive evaluation."""
    K = base_field_of(phi)
    L = make_extension(K.q, K.n * k)
    phi_aL = phi_of_a(lift_module(phi, embedding(K, L)), a)
    return [x for x in L.elements() if phi_aL(x).is_zero()]


# the Weil lab

def prime_divisors(a: Poly) -> list[Poly]:
    """Monic irreducible divisors of a, ordered by degree then coefficients."""
    out = []
    F = a.field
    for d in range(1, a.degree + 1):
        for m in enumerate_monics(F.q, d):
            if m.degree == d and is_irreducible(F, m.c) and (a % m).is_zero():
                out.append(m)
    return out


def _pairing_tables(ts: TorsionSpace):
    """phi_{T^j}(x) for each point, j < deg a, with their q-th powers."""
    phi = ts.module_L
    n = ts.a.degree
    table = []
    for x in ts.points:
        vals = [x]
        for _ in range(n - 1):
            vals.append(phi.phi_T(vals[-1]))
        table.append((vals, [v.frob() for v in vals]))
    return table


def _w_from_tables(a: Poly, tx, ty):
    """Weil pairing from cached phi_{T^j} values and their q-powers."""
    xs, xq = tx
    ys, yq = ty
    n = a.degree
    total = None
    for i in range(n):
        for j in range(n - i):
            code = a.c[i + j + 1] if i + j + 1 < len(a.c) else 0
            if not code:
                continue
            m = xs[j] * yq[i] - xq[j] * ys[i]
            if code != 1:
                m = m * FqElem(a.field, code)
            total = m if total is None else total + m
    return total if total is not None else xs[0].const(0)


def weil_property_suite(phi: DrinfeldModule, a: Poly, rng, samples: int = 200, k_max: int = 48,
                        ts: TorsionSpace | None = None) -> dict:
    """Checks (1)-(6) on one module; (4) and (6) are observations only."""
    ts = ts or torsion_space(phi, a, k_max)
    L = ts.ambient
    phiL = ts.module_L
    psiL = determinant_module(phiL)
    psi_a = phi_of_a(psiL, a)
    pts = ts.points
    P_ = len(pts)
    exhaustive = P_ <= EXHAUSTIVE_LIMIT
    tables = _pairing_tables(ts)
    if exhaustive:
        pairs = [(i, j) for i in range(P_) for j in range(P_)]
    else:
        pairs = [(int(rng.integers(P_)), int(rng.integers(P_))) for _ in range(samples)]
    checks = []

    # (1) values lie in psi[a]
    W = {}
    bad = None
    for i, j in pairs:
        w = _w_from_tables(a, tables[i], tables[j])
        W[(i, j)] = w
        if bad is None and not psi_a(w).is_zero():
            bad = {"x": str(pts[i]), "y": str(pts[j]), "w": str(w)}
    checks.append(_chk("values-in-psi-torsion", bad, required=True, pairs=len(pairs), exhaustive=exhaustive))

    # (2) alternating
    bad = None
    idx = range(P_) if exhaustive else [int(rng.integers(P_)) for _ in range(min(samples, 100))]
    for i in idx:
        w = W[(i, i)] if (i, i) in W else _w_from_tables(a, tables[i], tables[i])
        if not w.is_zero():
            bad = {"x": str(pts[i]), "w": str(w)}
            break
    checks.append(_chk("alternating", bad, required=True))

    # (3) F_q-bilinearity on sampled triples and scalars
    F = L.base
    scalars = _fq_elems(F)
    bad = None
    for _ in range(samples):
        i, i2, j = (int(rng.integers(P_)) for _ in range(3))
        al = scalars[int(rng.integers(F.q))]
        x, x2, y = pts[i], pts[i2], pts[j]
        w = weil_pairing(phiL, a, x, y)
        lhs1 = weil_pairing(phiL, a, x + x2, y)
        rhs1 = w + weil_pairing(phiL, a, x2, y)
        lhs2 = weil_pairing(phiL, a, y, x * al)
        rhs2 = weil_pairing(phiL, a, y, x) * al
        lhs3 = weil_pairing(phiL, a, x * al, y)
        if lhs1 != rhs1 or lhs2 != rhs2 or lhs3 != w * al:
            bad = {"x": str(x), "x2": str(x2), "y": str(y), "alpha": str(al)}
            break
    checks.append(_chk("bilinear", bad, required=True, triples=samples))

    # (4) nondegeneracy on the computed basis (observation)
    b = ts.basis
    w_basis = weil_pairing(phiL, a, b[0], b[1]) if len(b) >= 2 else L.zero()
    generator = not w_basis.is_zero()
    if generator:
        for ell in prime_divisors(a):
            if phi_of_a(psiL, a // ell)(w_basis).is_zero():
                generator = False
    checks.append({"name": "nondegenerate", "status": "pass" if generator else "fail",
                   "required": False, "w_basis": str(w_basis),
                   "note": "w(b1, b2) generates psi[a] as an A-module"
                   if generator else "w(b1, b2) does not generate psi[a]"})
    if a.degree > 1 and len(b) >= 2:
        # with deg a > 1 the first two kernel vectors need not be an A-basis; also
        # record whether some pair of basis vectors gives a generator
        gens = []
        for (i1, x1), (i2, x2) in itertools.combinations(enumerate(b), 2):
            w = weil_pairing(phiL, a, x1, x2)
            ok = not w.is_zero() and all(not phi_of_a(psiL, a // ell)(w).is_zero()
                                         for ell in prime_divisors(a))
            if ok:
                gens.append([i1, i2])
        checks[-1]["generating_basis_pairs"] = gens
        checks[-1]["status"] = "pass" if gens else "fail"

    # (5) w_T is the Moore determinant
    if a.degree == 1 and a == Poly.gen(a.field.q, "T"):
        bad = None
        for (i, j), w in W.items():
            if w != moore_det([pts[i], pts[j]]):
                bad = {"x": str(pts[i]), "y": str(pts[j])}
                break
        checks.append(_chk("w_T-is-moore", bad, required=True))

    # (6) A-semilinearity, recorded only
    bad = None
    tested = 0
    for bpoly in polys_of_degree_below(a.field.q, a.degree):
        phib = phi_of_a(phiL, bpoly)
        psib = phi_of_a(psiL, bpoly)
        for _ in range(min(samples, 20)):
            x, y = pts[int(rng.integers(P_))], pts[int(rng.integers(P_))]
            tested += 1
            if weil_pairing(phiL, a, phib(x), y) != psib(weil_pairing(phiL, a, x, y)):
                bad = {"b": str(bpoly), "x": str(x), "y": str(y)}
                break
        if bad:
            break
    checks.append(_chk("A-semilinear", bad, required=False, tested=tested))

    return {
        "g": str(phi.g), "delta": str(phi.delta),
        "splitting_degree": ts.k, "ambient": f"F_{L.q}^{L.n}",
        "ambient_modulus": P.format_poly(L.base, L.modulus, "x"),
        "torsion_points": P_,
        "psi_torsion_points_in_ambient": _psi_size(psiL, a),
        "checks": checks,
        "status": "pass" if all(c["status"] == "pass" for c in checks if c["required"]) else "fail",
    }


def _psi_size(psiL: DrinfeldModule, a: Poly) -> int:
    """Number of points of psi[a] inside the ambient field."""
    L = psiL.gamma.field
    return L.base.q ** len(kernel_basis(L, phi_of_a(psiL, a)))


def _chk(name: str, bad, required: bool, **extra) -> dict:
    out = {"name": name, "status": "pass" if bad is None else "fail", "required": required}
    out.update(extra)
    if bad is not None:
        out["counterexample"] = bad
    return out


def seeded_generators(seed: int, count: int):
    """Independent Philox streams spawned from one seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def weil_lab(q: int, n: int, a: Poly, gammaT=None, trials: int = 25, seed: int = 0,
             samples: int = 200, k_max: int = 48) -> dict:
    """Run the Weil property suite on ``trials`` seeded random rank-2 modules."""
    K = make_extension(q, n)
    if gammaT is None:
        gammaT = K.gen() if n > 1 else K.one()
    A = make_afield(q, n, gammaT)
    if A.gamma(a).is_zero():
        raise BadLevelError(f"gamma({a}) = 0 for gamma(T) = {A.gammaT}")
    modules = []
    for rng in seeded_generators(seed, trials):
        phi = A.random_module(rng)
        modules.append(weil_property_suite(phi, a, rng, samples, k_max))
    return {
        "schema": 1, "lab": "weil", "q": q, "n": n, "a": str(a),
        "gammaT": str(A.gammaT),
        "field_modulus": P.format_poly(K.base, K.modulus, "x"),
        "bad_levels": [str(b) for b in A.bad_levels()],
        "seed": seed, "trials": trials, "samples": samples,
        "modules": modules,
        "nondegenerate_count": sum(1 for m in modules for c in m["checks"]
                                   if c["name"] == "nondegenerate" and c["status"] == "pass"),
        "semilinear_count": sum(1 for m in modules for c in m["checks"]
                                if c["name"] == "A-semilinear" and c["status"] == "pass"),
        "status": "pass" if all(m["status"] == "pass" for m in modules) else "fail",
    }


__all__ = [
    "AField", "BadLevelError", "TorsionError", "TorsionSpace", "EXHAUSTIVE_LIMIT", "embedding",
    "kernel_basis", "linear_map_matrix", "make_afield", "nullspace", "prime_divisors",
    "scan_torsion", "seeded_generators", "span", "splitting_degree", "torsion_space",
    "weil_lab", "weil_property_suite",
]
