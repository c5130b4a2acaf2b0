"""Level-a structures for monic degree-one a: Eisenstein series E_v in t_a.

Everything lives over the Kummer field F_q(l), l^(q-1) = -a, with l playing
the role of lambda_a = pi e_A(1/a).  With t_a = 1/(pi e_A(z/a)) and
1/e_A(x) = sum_{b in A} 1/(x + b) the Eisenstein series of label
v = (u1/a, u2/a) becomes

    E_v = [u1 = 0]/(u2 l) + sum_{M = u1 mod a, M != 0} t_a^(q^d) / (f_M(t_a) + u2 l t_a^(q^d))

(d = deg M), since pi e_A(Mz/a + u2/a) = rho_M(1/t_a) + u2 l.  A term with
deg M = d has valuation q^d, so terms with q^d >= N are dropped.  Level-one
series are moved to level a through 1/t = rho_a(1/t_a), i.e.
t = t_a^q / f_a(t_a).
"""
from __future__ import annotations

import itertools
import math

from .exactfield import FqElem, KummerField, Poly, RatFun, polys_of_degree_below
from .series import (INF, TruncSeries, delta_from_h, first_difference, fit_unit,
                     g_aexpansion, h_product, identity_report, serre_sign_fit,
                     ts_compose_subst)
from .skew import SkewPoly, f_polynomial, moore_det

LEVEL_VAR = "t_a"


class LevelError(ValueError):
    pass


class LevelCtx:
    """Level a (monic, degree 1), its Kummer field and the working order N."""

    def __init__(self, a: Poly, N: int):
        if a.var != "T" or a.degree != 1 or not a.is_monic():
            raise LevelError(f"only monic degree-1 levels are supported, got a = {a}")
        if N < 2:
            raise LevelError("order N must be >= 2")
        self.a, self.N = a, N
        self.q = a.field.q
        self.F = a.field
        self.K = KummerField(a)
        self.lam = self.K.lam
        self.T = self.K.T
        self.var = LEVEL_VAR
        self._E: dict[tuple[int, int], TruncSeries] = {}
        self._f: dict[tuple, dict] = {}

    @property
    def zero(self) -> RatFun:
        return self.lam.zero()

    def field_tag(self) -> str:
        return f"F_{self.q}(l), l^{self.q - 1} = -({self.a})"

    def labels(self) -> list[tuple[int, int]]:
        """V' as pairs of F_q codes, ordered by (u1, u2)."""
        return [(u1, u2) for u1 in range(self.q) for u2 in range(self.q) if (u1, u2) != (0, 0)]

    def fq(self, code: int) -> FqElem:
        return FqElem(self.F, code)

    def det(self, u, v) -> FqElem:
        return self.fq(u[0]) * self.fq(v[1]) - self.fq(u[1]) * self.fq(v[0])

    def exact(self, c) -> TruncSeries:
        return TruncSeries([self.zero + c], 0, INF, self.var, self.zero)

    def f_terms(self, M: Poly) -> dict:
        """f_M with coefficients embedded in F_q(l), memoized."""
        hit = self._f.get(M.c)
        if hit is None:
            hit = {e: self.K.embed(c) for e, c in f_polynomial(M).items()}
            self._f[M.c] = hit
        return hit

    def __repr__(self) -> str:
        return f"LevelCtx(a={self.a}, q={self.q}, N={self.N})"


def make_level(a: Poly, N: int) -> LevelCtx:
    return LevelCtx(a, N)


def _residue_class(ctx: LevelCtx, u1: int, dmax: int) -> list[Poly]:
    """Nonzero M with deg M <= dmax and M(-theta) = u1, ordered by degree then code."""
    root = -ctx.K.theta
    target = ctx.fq(u1)
    out = []
    for M in polys_of_degree_below(ctx.q, dmax + 1):
        if not M.is_zero() and M(root) == target:
            out.append(M)
    out.sort(key=lambda m: (m.degree, m.c[::-1]))
    return out


def eisenstein_expand(ctx: LevelCtx, v) -> TruncSeries:
    """E_v modulo t_a^N for the label v = (u1, u2), given as FqElem or as F_q codes."""
    u1, u2 = (x.v if isinstance(x, FqElem) else int(x) for x in v)
    if not (0 <= u1 < ctx.q and 0 <= u2 < ctx.q):
        raise LevelError(f"label entries must be F_q codes below {ctx.q}, got {v}")
    if (u1, u2) == (0, 0):
        raise LevelError("E_v needs v != 0")
    hit = ctx._E.get((u1, u2))
    if hit is not None:
        return hit
    q, N = ctx.q, ctx.N
    zero = ctx.zero
    acc = TruncSeries([], 0, N, ctx.var, zero)
    if u1 == 0:
        acc = acc + ctx.exact((ctx.lam * ctx.fq(u2)).inverse())
    dmax = 0
    while q ** (dmax + 1) < N:
        dmax += 1
    u2l = ctx.lam * ctx.fq(u2)
    for M in _residue_class(ctx, u1, dmax):
        lead = q**M.degree
        terms = dict(ctx.f_terms(M))
        if u2:
            terms[lead] = terms.get(lead, zero) + u2l
        den = TruncSeries.from_dict(terms, INF, ctx.var, zero)
        acc = acc + den.inverse(order=N - lead).shift(lead)
    ctx._E[(u1, u2)] = acc
    return acc


def t_in_level(ctx: LevelCtx, N: int | None = None) -> TruncSeries:
    """t = t_a^q / f_a(t_a) modulo t_a^N."""
    N = ctx.N if N is None else N
    f = TruncSeries.from_dict(ctx.f_terms(ctx.a), INF, ctx.var, ctx.zero)
    return f.inverse(order=N - ctx.q).shift(ctx.q)


def t_in_tlevel(ctx: LevelCtx, N: int | None = None) -> TruncSeries:
    if ctx.a != Poly.gen(ctx.q, "T"):
        raise LevelError("t_in_tlevel is defined for the level a = T")
    return t_in_level(ctx, N)


def to_level(ctx: LevelCtx, f1: TruncSeries, N: int | None = None) -> TruncSeries:
    """A level-one series in t rewritten in t_a (coefficients embedded)."""
    N = ctx.N if N is None else N
    s = t_in_level(ctx, N)
    fl = f1.map_coeffs(ctx.K.embed, ctx.zero).with_var(ctx.var)
    return ts_compose_subst(fl, s).truncate(N)


def _level1_order(ctx: LevelCtx, N: int, val: int) -> int:
    """Level-one order whose substitution is known modulo t_a^N (val = valuation in t)."""
    return max(2, math.ceil((N - ctx.q * val) / ctx.q) + val + 2)


def h_at_level(ctx: LevelCtx, N: int | None = None) -> TruncSeries:
    N = ctx.N if N is None else N
    return to_level(ctx, h_product(ctx.q, _level1_order(ctx, N, 1)), N)


def g_at_level(ctx: LevelCtx, N: int | None = None) -> TruncSeries:
    N = ctx.N if N is None else N
    return to_level(ctx, g_aexpansion(ctx.q, _level1_order(ctx, N, 0)), N)


def reconstruct_phi(ctx: LevelCtx) -> list[TruncSeries]:
    """Coefficients c_k of prod_{v in V'} (1 - E_v X) for k = 0 .. q^2 - 1."""
    coeffs = [ctx.exact(ctx.zero.one())]
    for v in ctx.labels():
        E = eisenstein_expand(ctx, v)
        new = coeffs + [None]
        for k in range(len(coeffs), 0, -1):
            term = E * coeffs[k - 1]
            new[k] = -term if new[k] is None else new[k] - term
        coeffs = new
    return coeffs


def forms_from_level(ctx: LevelCtx) -> dict:
    """g, Delta, h at level T from the E_v, with the level-one h substituted.

    h is the product lambda * E_(0,1) * prod_eps E_(1,eps) times the unit
    fitted from the leading coefficient against the substituted level-one h.
    """
    _require_T(ctx)
    c = reconstruct_phi(ctx)
    T = ctx.T
    g = c[ctx.q - 1] * T
    delta = c[ctx.q**2 - 1] * T
    h_sub = h_at_level(ctx)
    prod = h1_product(ctx)
    unit = fit_unit(h_sub, prod)
    h = prod * unit if unit is not None else prod
    return {"g": g, "delta": delta, "h": h, "h_substituted": h_sub, "varsigma": unit,
            "phi_coeffs": c}


def h1_product(ctx: LevelCtx) -> TruncSeries:
    acc = eisenstein_expand(ctx, (0, 1)) * ctx.lam
    for eps in range(ctx.q):
        acc = acc * eisenstein_expand(ctx, (1, eps))
    return acc


def _require_T(ctx: LevelCtx):
    if ctx.a != Poly.gen(ctx.q, "T"):
        raise LevelError("this check is stated for the level a = T")


def _work_order(N: int, q: int) -> int:
    # reciprocals and q-th powers of E lose about 2q + 2 places
    return N + 2 * q + 4


def _suite(name: str, ctx: LevelCtx, N: int, checks: list, fitted: dict | None = None) -> dict:
    return {
        "schema": 1,
        "suite": name,
        "q": ctx.q,
        "order": N,
        "level": str(ctx.a),
        "field": ctx.field_tag(),
        "variable": ctx.var,
        "fitted": fitted or {},
        "checks": checks,
        "status": "pass" if all(c["status"] == "pass" for c in checks) else "fail",
    }


def _unit_str(c) -> str | None:
    return None if c is None else str(c)


def _constant(c) -> FqElem | None:
    if c is None or not c.is_constant():
        return None
    return c.constant_value()


def moore_pair_check(ctx: LevelCtx, N: int, h: TruncSeries, independent_only: bool,
                     name: str) -> list[dict]:
    """M(E_u^-1, E_v^-1) = det(u, v) * l * h^-1 for ordered label pairs."""
    labels = ctx.labels()
    recips = {v: eisenstein_expand(ctx, v).inverse() for v in labels}
    hinv_l = h.inverse() * ctx.lam
    fails, count, reached = [], 0, INF
    for u in labels:
        for v in labels:
            d = ctx.det(u, v)
            if independent_only and d.is_zero():
                continue
            lhs = moore_det([recips[u], recips[v]])
            rhs = hinv_l * d
            count += 1
            reached = min(reached, lhs.prec, rhs.prec)
            diff = first_difference(lhs, rhs, N)
            if diff is not None:
                fails.append({"u": list(u), "v": list(v), "exponent": diff})
    status = "pass" if not fails and reached >= N else "fail"
    out = {"identity": name, "status": status, "pairs": count,
           "first_failing_exponent": fails[0]["exponent"] if fails else None,
           "compared_below": int(min(reached, N))}
    if fails:
        out["failures"] = fails[:10]
    return [out]


def theorem1_suite(ctx: LevelCtx, N: int) -> dict:
    """MooreDet2 as printed, h1 and h2 with fitted units, and the alternating sum."""
    _require_T(ctx)
    h = h_at_level(ctx)
    checks = moore_pair_check(ctx, N, h, True, "moore-det2")
    q = ctx.q

    prod = h1_product(ctx)
    vs = fit_unit(h, prod)
    vs_c = _constant(vs)
    r = identity_report("h1", h, prod * vs if vs is not None else prod, N,
                        fitted_unit=_unit_str(vs), unit_in_Fq=vs_c is not None)
    if vs_c is None:
        r["status"] = "fail"
    checks.append(r)

    # h2 over every choice of representatives alpha_w * w for P(V)
    base = [(0, 1)] + [(1, e) for e in range(q)]
    rep_fail = []
    choices = 0
    for alphas in itertools.islice(itertools.product(range(1, q), repeat=len(base)), 256):
        choices += 1
        acc = ctx.exact(ctx.lam)
        scale = ctx.fq(1)
        for w, al in zip(base, alphas):
            a = ctx.fq(al)
            acc = acc * eisenstein_expand(ctx, (a * ctx.fq(w[0]), a * ctx.fq(w[1])))
            scale = scale * a
        c = fit_unit(h, acc)
        c_fq = _constant(c)
        bad = c_fq is None or first_difference(h, acc * c, N) is not None
        predicted = vs_c * scale if vs_c is not None else None
        if bad or predicted != c_fq:
            rep_fail.append({"alphas": list(alphas), "fitted": _unit_str(c),
                             "predicted": _unit_str(predicted)})
    checks.append({"identity": "h2", "status": "pass" if not rep_fail else "fail",
                   "representative_choices": choices,
                   "rule": "c = varsigma * prod(alpha_w)",
                   "first_failing_exponent": None, "compared_below": N,
                   **({"failures": rep_fail[:10]} if rep_fail else {})})

    alt = alternating_sum(ctx)
    c = fit_unit(h, alt)
    checks.append(identity_report("alternating", h, alt * c if c is not None else alt, N,
                                  fitted_c=_unit_str(c)))
    fitted = {"varsigma": _unit_str(vs), "alternating_c": _unit_str(c)}
    return _suite("theorem1", ctx, N, checks, fitted)


def alternating_sum(ctx: LevelCtx) -> TruncSeries:
    """sum over <u, v> = 1 of E_u^q E_v, <u, v> = u1 v2 - u2 v1."""
    acc = None
    one = ctx.fq(1)
    for u in ctx.labels():
        Eq = eisenstein_expand(ctx, u).frob()
        for v in ctx.labels():
            if ctx.det(u, v) == one:
                term = Eq * eisenstein_expand(ctx, v)
                acc = term if acc is None else acc + term
    return acc


def alternating_suite(ctx: LevelCtx, N: int) -> dict:
    _require_T(ctx)
    h = h_at_level(ctx)
    alt = alternating_sum(ctx)
    c = fit_unit(h, alt)
    checks = [identity_report("alternating", h, alt * c if c is not None else alt, N,
                              fitted_c=_unit_str(c))]
    if c is None:
        checks[0]["status"] = "fail"
    return _suite("alternating", ctx, N, checks, {"alternating_c": _unit_str(c)})


def delta_root_suite(ctx: LevelCtx, N: int) -> dict:
    """-h^(q-1) from level one, substituted, against T * prod E_v."""
    _require_T(ctx)
    prod = ctx.exact(ctx.T)
    for v in ctx.labels():
        prod = prod * eisenstein_expand(ctx, v)
    d1 = delta_from_h(h_product(ctx.q, _level1_order(ctx, ctx.N, ctx.q - 1)))
    d_sub = to_level(ctx, d1)
    checks = [identity_report("delta-root-vs-dprod", d_sub, prod, N),
              identity_report("delta-of-substituted-h", delta_from_h(h_at_level(ctx)), prod, N)]
    return _suite("delta-root", ctx, N, checks)


def dprod_suite(ctx: LevelCtx, N: int) -> dict:
    """phi_T = T X prod (1 - E_v X): vanishing coefficients, g and Delta cross-checks."""
    _require_T(ctx)
    q = ctx.q
    c = reconstruct_phi(ctx)
    T = ctx.T
    checks = []
    nonzero_at = {0, q - 1, q * q - 1}
    bad = []
    reached = INF
    for k, ck in enumerate(c):
        reached = min(reached, ck.prec)
        if k not in nonzero_at and first_difference(ck, ctx.exact(ctx.zero), N) is not None:
            bad.append(k + 1)
    checks.append({"identity": "phi-T-support", "status": "pass" if not bad and reached >= N else "fail",
                   "nonvanishing_X_powers": sorted(k + 1 for k in nonzero_at),
                   "bad_X_powers": bad, "first_failing_exponent": None,
                   "compared_below": int(min(reached, N))})
    checks.append(identity_report("linear-coefficient", c[0] * T, ctx.exact(T), N))
    g = c[q - 1] * T
    delta = c[q * q - 1] * T
    prod = ctx.exact(T)
    for v in ctx.labels():
        prod = prod * eisenstein_expand(ctx, v)
    checks.append(identity_report("delta-is-T-prod-E", delta, prod, N))
    checks.append(identity_report("g-vs-level-one", g, g_at_level(ctx), N))
    x = eisenstein_expand(ctx, (0, 1)).inverse()
    y = eisenstein_expand(ctx, (1, 0)).inverse()
    m = moore_det([x, y])
    checks.append(identity_report("delta-moore", delta, (m ** (q - 1)).inverse() * T, N))
    return _suite("dprod", ctx, N, checks)


def weil_series_check(ctx: LevelCtx, N: int) -> dict:
    """M(E_u^-1, E_v^-1) = det(u, v) * lambda_a * h^-1 for all label pairs."""
    h = h_at_level(ctx)
    checks = moore_pair_check(ctx, N, h, False, "weil-moore")
    return _suite("weil-series", ctx, N, checks)


def determinant_torsion_check(ctx: LevelCtx, N: int) -> dict:
    """psi_T(l h^-1) = 0 with the level-T Delta, and h^-1 o rho_T o h = T X - Delta X^q."""
    _require_T(ctx)
    h = h_at_level(ctx)
    delta = ctx.exact(ctx.T)
    for v in ctx.labels():
        delta = delta * eisenstein_expand(ctx, v)
    x = h.inverse() * ctx.lam
    Tser = ctx.exact(ctx.T)
    lhs = Tser * x - delta * x.frob()
    checks = [identity_report("psi-T-kills-lambda-over-h", lhs, ctx.exact(ctx.zero), N)]
    one = ctx.exact(ctx.zero.one())
    rho = SkewPoly([Tser, one])
    conj = SkewPoly([h.inverse()]) @ rho @ SkewPoly([h])
    psi = SkewPoly([Tser, -delta])
    for i, name in enumerate(["X", "X^q"]):
        checks.append(identity_report(f"conjugate-coefficient-{name}", conj[i], psi[i], N))
    checks.append({"identity": "conjugate-degree", "status": "pass" if conj.degree == 1 else "fail",
                   "first_failing_exponent": None, "compared_below": N})
    return _suite("det-torsion", ctx, N, checks)


def serre_level_check(ctx: LevelCtx, N: int, coeff=None) -> dict:
    """Serre residual in t_a with kappa = a, g and Delta from the E_v."""
    _require_T(ctx)
    c = reconstruct_phi(ctx)
    g = c[ctx.q - 1] * ctx.T
    delta = c[ctx.q**2 - 1] * ctx.T
    h = h_at_level(ctx)
    fit = serre_sign_fit(g.truncate(N + 1), delta, h.truncate(N), ctx.T, coeff)
    return fit


def level_suite(name: str, q: int, N: int, a: Poly | None = None) -> dict:
    """Run a named level suite at order N (work order chosen internally)."""
    a = a if a is not None else Poly.gen(q, "T")
    ctx = make_level(a, _work_order(N, q))
    runners = {
        "theorem1": theorem1_suite,
        "dprod": dprod_suite,
        "alternating": alternating_suite,
        "weil-series": weil_series_check,
        "det-torsion": determinant_torsion_check,
        "delta-root": delta_root_suite,
    }
    if name not in runners:
        raise LevelError(f"unknown level suite {name!r}")
    return runners[name](ctx, N)


__all__ = [
    "LEVEL_VAR", "LevelCtx", "LevelError", "make_level", "eisenstein_expand", "t_in_level",
    "t_in_tlevel", "to_level", "h_at_level", "g_at_level", "reconstruct_phi", "forms_from_level",
    "h1_product", "theorem1_suite", "alternating_sum", "alternating_suite", "delta_root_suite",
    "dprod_suite", "weil_series_check", "determinant_torsion_check", "serre_level_check",
    "level_suite", "moore_pair_check",
]
