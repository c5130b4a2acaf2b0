"""Named verification suites at level one, plus dispatch to the level and moduli suites.

Every suite returns a JSON-ready dict with "schema": 1, a list of checks and a
status.  A check counts towards the status unless it carries required = False.
"""
from __future__ import annotations

from .exactfield import Poly, prime_power
from .level import LevelError, h_at_level, level_suite, make_level, reconstruct_phi, _work_order
from .moduli import jtilde_series_check
from .series import (delta_from_h, first_difference, g_aexpansion, h_aexpansion, h_product,
                     identity_report, is_integral, serre_sign_fit, support_congruent)

LEVEL_SUITES = ("delta-root", "theorem1", "dprod", "alternating", "weil-series", "det-torsion")
LEVEL1_SUITES = ("aexp-vs-product", "serre", "jtilde-series")
SUITES = ("aexp-vs-product", "delta-root", "serre", "theorem1", "dprod", "alternating",
          "weil-series", "det-torsion", "jtilde-series")


class SuiteError(ValueError):
    pass


def default_order(suite: str, q: int) -> int:
    if suite in LEVEL1_SUITES:
        return 2 * q * q
    return min(2 * q**3, 60)


def finalize(report: dict) -> dict:
    ok = all(c["status"] == "pass" for c in report["checks"] if c.get("required", True))
    report["status"] = "pass" if ok else "fail"
    return report


def _flag(name: str, ok: bool, **extra) -> dict:
    out = {"identity": name, "status": "pass" if ok else "fail",
           "first_failing_exponent": None}
    out.update(extra)
    return out


def aexp_vs_product(q: int, N: int) -> dict:
    """h from the product against h from the A-expansion, with shape checks on h and Delta."""
    hp = h_product(q, N)
    ha = h_aexpansion(q, N)
    checks = [identity_report("product-equals-aexpansion", hp, ha, N)]
    lead_ok = not hp.is_zero() and hp.val == 1 and hp[1] == hp.zero.const(-1)
    checks.append(_flag("leading-coefficient-minus-one", lead_ok, coefficient=str(hp[1])))
    if q > 2:
        checks.append(_flag("support-1-mod-q-minus-1", support_congruent(hp, 1, q - 1),
                            support=hp.support()[:12]))
    checks.append(_flag("integral-coefficients", is_integral(hp) and is_integral(ha)))
    d = delta_from_h(hp)
    d_lead = d.leading() if not d.is_zero() else None
    want = hp.zero.const(-1) * hp.zero.const(-1) ** (q - 1)
    checks.append(_flag("delta-valuation", not d.is_zero() and d.val == q - 1,
                        valuation=None if d.is_zero() else int(d.val), expected=q - 1))
    checks.append(_flag("delta-leading-coefficient", d_lead == want, coefficient=str(d_lead)))
    checks.append(_flag("delta-support-0-mod-q-minus-1", support_congruent(d, 0, q - 1)))
    longer = h_product(q, N + q)
    diff = first_difference(hp, longer, N)
    checks.append(_flag("truncation-sound", diff is None and hp.prec >= N,
                        first_failing_exponent=diff, compared_below=N))
    return finalize({
        "schema": 1, "suite": "aexp-vs-product", "q": q, "order": N, "variable": "t",
        "field": f"F_{q}(T)", "fitted": {}, "checks": checks,
    })


def _serre_check(name: str, fit: dict, N: int, required: bool, coeff_desc: str) -> dict:
    reached = min(r["precision"] for r in fit["results"])
    ok = fit["ok"] and reached >= N
    out = {
        "identity": name, "status": "pass" if ok else "fail", "required": required,
        "coefficient_of_dlog": coeff_desc,
        "signs": [{"sigma": str(r["sigma"]), "residual_zero": r["residual_zero"],
                   "first_nonzero": r["first_nonzero"]} for r in fit["results"]],
        "sigma": str(fit["winners"][0]) if len(fit["winners"]) == 1 else None,
        "first_failing_exponent": None if ok else min(
            (r["first_nonzero"] for r in fit["results"] if r["first_nonzero"] is not None),
            default=None),
        "compared_below": int(min(reached, N)),
    }
    if reached < N:
        out["note"] = f"precision {reached} below requested {N}"
    return out


def serre(q: int, N: int, level_t: bool | None = None) -> dict:
    """Serre derivative of g against h, both signs.

    The printed normalisation (coefficient q - 1 on Delta'/Delta) is the
    required check.  The variant with coefficient 1 and, for q <= 3, the same
    pair of checks at level T are reported alongside as observations.
    """
    work = N + 2 * q + 4
    h = h_product(q, work).truncate(N)
    g = g_aexpansion(q, work).truncate(N + 1)
    delta = delta_from_h(h_product(q, work))
    one = h.zero.one()
    printed = serre_sign_fit(g, delta, h, one)
    corrected = serre_sign_fit(g, delta, h, one, coeff=1)
    checks = [_serre_check("serre-printed", printed, N, True, "q-1"),
              _serre_check("serre-coefficient-one", corrected, N, False, "1")]
    if level_t is None:
        level_t = q <= 3
    if level_t:
        NT = min(N, 60)
        ctx = make_level(Poly.gen(q, "T"), _work_order(NT, q))
        c = reconstruct_phi(ctx)
        gT = (c[q - 1] * ctx.T).truncate(NT + 1)
        dT = c[q * q - 1] * ctx.T
        hT = h_at_level(ctx).truncate(NT)
        for name, coeff, desc in (("serre-level-T-printed", None, "q-1"),
                                  ("serre-level-T-coefficient-one", 1, "1")):
            chk = _serre_check(name, serre_sign_fit(gT, dT, hT, ctx.T, coeff), NT, False, desc)
            checks.append(chk)
    fitted = {c["identity"]: c["sigma"] for c in checks}
    return finalize({
        "schema": 1, "suite": "serre", "q": q, "order": N, "variable": "t",
        "field": f"F_{q}(T)", "fitted": {"sigma": fitted}, "checks": checks,
    })


def run_suite(name: str, q: int, N: int | None = None, a: Poly | None = None) -> dict:
    """Dispatch by suite name; N defaults per the suite's level."""
    if name not in SUITES:
        raise SuiteError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    prime_power(q)
    N = default_order(name, q) if N is None else N
    if N < 2:
        raise SuiteError("order must be >= 2")
    if name == "aexp-vs-product":
        return aexp_vs_product(q, N)
    if name == "serre":
        return serre(q, N)
    if name == "jtilde-series":
        return jtilde_series_check(q, N)
    if a is not None and name != "weil-series" and a != Poly.gen(q, "T"):
        raise SuiteError(f"suite {name} is stated for the level a = T")
    try:
        return level_suite(name, q, N, a)
    except LevelError as exc:
        raise SuiteError(str(exc)) from exc


__all__ = ["LEVEL1_SUITES", "LEVEL_SUITES", "SUITES", "SuiteError", "aexp_vs_product",
           "default_order", "finalize", "run_suite", "serre"]
