"""drinfeld: expansions, verification suites and finite-field labs from the command line.

Exit codes: 0 pass, 1 identity or check failure, 2 usage or configuration
error, 3 undecided classification entries.
"""
from __future__ import annotations

import argparse
import json
import sys

from .exactfield import Poly, make_extension, parse_ext, parse_fq, parse_poly, prime_power
from .level import LevelError, eisenstein_expand, g_at_level, make_level
from .moduli import ModuliError, classify_by_jtilde, jtilde_series
from .series import (delta_from_h, format_series, g_aexpansion, h_aexpansion, h_product,
                     series_to_json)
from .suites import SUITES, SuiteError, run_suite
from .torsionlab import BadLevelError, weil_lab

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3
LEVEL1_FORMS = ("h-product", "h-aexp", "delta", "g", "jtilde")
FORMS = LEVEL1_FORMS + ("g-level", "E")


class ConfigError(ValueError):
    pass


class RunConfig:
    """Validated options shared by the subcommands."""

    def __init__(self, ns: argparse.Namespace):
        self.command = ns.command
        self.q = ns.q
        try:
            prime_power(self.q)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        self.N = getattr(ns, "order", None)
        if self.N is not None and self.N < 2:
            raise ConfigError("--order must be >= 2")
        self.a = _parse_level(ns.a, self.q) if getattr(ns, "a", None) else None
        self.fmt = ns.format
        self.out = ns.out
        self.ns = ns


def _parse_level(text: str, q: int) -> Poly:
    try:
        a = parse_poly(text, q, "T")
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse level {text!r}: {exc}") from None
    if a.is_zero():
        raise ConfigError("level a must be nonzero")
    return a


def _parse_label(text: str, q: int):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ConfigError("--v takes two comma-separated F_q elements, e.g. 0,1")
    try:
        return tuple(parse_fq(p, q) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse label {text!r}: {exc}") from None


# expand

def run_expand(cfg: RunConfig) -> tuple[dict, int]:
    q, form = cfg.q, cfg.ns.form
    level1 = form in LEVEL1_FORMS
    N = cfg.N if cfg.N is not None else (2 * q * q if level1 else min(2 * q**3, 60))
    meta: dict = {"schema": 1, "form": form, "q": q, "order": N}
    if level1:
        if form == "h-product":
            f = h_product(q, N)
        elif form == "h-aexp":
            f = h_aexpansion(q, N)
        elif form == "delta":
            f = delta_from_h(h_product(q, N)).truncate(N)
        elif form == "g":
            f = g_aexpansion(q, N)
        else:
            f, _, m = jtilde_series(q, N)
            f = f.truncate(N)
            meta["pole_order"] = m
        meta["series"] = series_to_json(f)
    else:
        a = cfg.a if cfg.a is not None else Poly.gen(q, "T")
        ctx = make_level(a, N)
        meta["level"] = str(a)
        if form == "g-level":
            f = g_at_level(ctx)
        else:
            if not cfg.ns.v:
                raise ConfigError("--form E needs --v u1,u2")
            v = _parse_label(cfg.ns.v, q)
            if all(x.is_zero() for x in v):
                raise ConfigError("label v must be nonzero")
            meta["v"] = [str(x) for x in v]
            f = eisenstein_expand(ctx, v)
        meta["series"] = series_to_json(f, ctx.field_tag())
    text = f"{form} (q = {q}, order {N}): {format_series(f)}"
    return {"report": meta, "text": text}, EXIT_PASS


# verify

def run_verify(cfg: RunConfig) -> tuple[dict, int]:
    try:
        rep = run_suite(cfg.ns.suite, cfg.q, cfg.N, cfg.a)
    except (SuiteError, LevelError, ModuliError) as exc:
        raise ConfigError(str(exc)) from None
    lines = [f"suite {rep['suite']} q = {rep['q']} order {rep['order']}: {rep['status'].upper()}"]
    for c in rep["checks"]:
        tag = "" if c.get("required", True) else " (observation)"
        where = c.get("first_failing_exponent")
        at = f" first failing exponent {where}" if c["status"] != "pass" and where is not None else ""
        lines.append(f"  {c['status']:4s} {c['identity']}{tag}{at}")
    if rep.get("fitted"):
        lines.append(f"  fitted: {json.dumps(rep['fitted'])}")
    return {"report": rep, "text": "\n".join(lines)}, EXIT_PASS if rep["status"] == "pass" else EXIT_FAIL


# lab

def _gamma(cfg: RunConfig, n: int):
    if cfg.ns.gammaT is None:
        return None
    try:
        return parse_ext(cfg.ns.gammaT, make_extension(cfg.q, n))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse gamma(T) {cfg.ns.gammaT!r}: {exc}") from None


def run_lab(cfg: RunConfig) -> tuple[dict, int]:
    ns = cfg.ns
    if ns.n < 1:
        raise ConfigError("--n must be >= 1")
    gamma = _gamma(cfg, ns.n)
    if ns.lab == "weil":
        if ns.seed is None:
            raise ConfigError("lab weil needs --seed")
        if ns.trials < 1:
            raise ConfigError("--trials must be >= 1")
        a = cfg.a if cfg.a is not None else Poly.gen(cfg.q, "T")
        if a.degree < 1:
            raise ConfigError("level a must have degree >= 1")
        try:
            rep = weil_lab(cfg.q, ns.n, a, gamma, trials=ns.trials, seed=ns.seed,
                           samples=ns.samples)
        except BadLevelError as exc:
            raise ConfigError(f"bad level: {exc}") from None
        lines = [f"weil lab q = {cfg.q} n = {ns.n} a = {rep['a']} seed {ns.seed}: "
                 f"{rep['status'].upper()}",
                 f"  nondegenerate {rep['nondegenerate_count']}/{ns.trials}, "
                 f"A-semilinear {rep['semilinear_count']}/{ns.trials}"]
        code = EXIT_PASS if rep["status"] == "pass" else EXIT_FAIL
    else:
        try:
            rep = classify_by_jtilde(cfg.q, ns.n, gamma)
        except ModuliError as exc:
            raise ConfigError(str(exc)) from None
        lines = [f"moduli lab q = {cfg.q} n = {ns.n}: {rep['status'].upper()}",
                 f"  {rep['pairs']} pairs, {rep['class_count']} classes, "
                 f"{rep['jtilde_values']} j~ values"]
        for c in rep["checks"]:
            tag = "" if c["required"] else " (observation)"
            lines.append(f"  {c['status']:4s} {c['name']}{tag}")
        lines.append("  class table (j~, size):")
        for cl in rep["classes"]:
            lines.append(f"    {cl['jtilde']:>24s}  {cl['size']}")
        code = {"pass": EXIT_PASS, "undecided": EXIT_UNDECIDED}.get(rep["status"], EXIT_FAIL)
    return {"report": rep, "text": "\n".join(lines)}, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, required=True, help="field size, a prime power")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="drinfeld", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="print a truncated expansion")
    e.add_argument("--form", choices=FORMS, required=True)
    e.add_argument("--order", type=int, help="truncation order N")
    e.add_argument("--a", help="monic degree-one level for g-level and E (default T)")
    e.add_argument("--v", help="label u1,u2 for E_v")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--order", type=int, help="truncation order N")
    v.add_argument("--a", help="level for weil-series (default T)")

    lab = sub.add_parser("lab", help="finite-field labs")
    labs = lab.add_subparsers(dest="lab", required=True)
    w = labs.add_parser("weil", parents=[common], help="Weil pairing properties on random modules")
    m = labs.add_parser("moduli", parents=[common], help="classify decorated pairs by j~")
    for sp in (w, m):
        sp.add_argument("--n", type=int, default=1, help="base field F_{q^n}")
        sp.add_argument("--gammaT", help="gamma(T) in F_{q^n}, written in x")
    w.add_argument("--a", help="level a (default T)")
    w.add_argument("--trials", type=int, default=25)
    w.add_argument("--seed", type=int)
    w.add_argument("--samples", type=int, default=200)
    return p


def dump(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    runners = {"expand": run_expand, "verify": run_verify, "lab": run_lab}
    try:
        cfg = RunConfig(ns)
        result, code = runners[ns.command](cfg)
    except (ConfigError, LevelError) as exc:
        print(f"drinfeld: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = dump(result["report"]) if cfg.fmt == "json" else result["text"] + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
