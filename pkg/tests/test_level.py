import pytest

from drinfeld.exactfield import Poly, parse_poly
from drinfeld.level import (LevelError, eisenstein_expand, forms_from_level, h_at_level,
                            level_suite, make_level, reconstruct_phi, t_in_tlevel)
from drinfeld.series import TruncSeries, first_difference


def ctx_T(q, N=20):
    return make_level(Poly.gen(q), N)


def test_make_level_contract():
    c = ctx_T(3)
    assert c.lam ** 2 == -c.T
    c1 = make_level(parse_poly("T+1", 3), 10)
    assert c1.lam ** 2 == -(c1.T + 1)
    with pytest.raises(LevelError):
        make_level(parse_poly("T^2", 3), 10)
    with pytest.raises(LevelError):
        make_level(parse_poly("2*T", 3), 10)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_eisenstein_leading_terms(q):
    c = ctx_T(q, 3 * q)
    E01 = eisenstein_expand(c, (0, 1))
    assert E01.val == 0 and E01[0] == c.lam.inverse()
    for eps in range(q):
        E = eisenstein_expand(c, (1, eps))
        assert E.val == 1 and E[1] == c.zero.one()


@pytest.mark.parametrize("q", [2, 3])
def test_eisenstein_scaling(q):
    # E_(alpha v) = alpha^-1 E_v
    c = ctx_T(q, 15)
    for v in c.labels():
        for al in range(1, q):
            a = c.fq(al)
            w = (a * c.fq(v[0]), a * c.fq(v[1]))
            assert eisenstein_expand(c, w) == eisenstein_expand(c, v) * a.inverse()


def test_t_in_tlevel_q3():
    c = ctx_T(3, 10)
    T = c.T
    t = t_in_tlevel(c)
    assert t.val == 3
    want = TruncSeries.from_dict({3: c.zero.one(), 5: -T, 7: T * T, 9: -(T ** 3)}, 10, c.var, c.zero)
    assert t == want
    with pytest.raises(LevelError):
        t_in_tlevel(make_level(parse_poly("T+1", 3), 10))


@pytest.mark.parametrize("q", [2, 3])
def test_h_at_level_leading(q):
    c = ctx_T(q, 20)
    h = h_at_level(c)
    assert h.val == q and h[q] == c.zero.const(-1)


def test_forms_from_level_q3():
    c = ctx_T(3, 30)
    f = forms_from_level(c)
    assert f["g"][0] == c.zero.one()
    assert f["delta"].val == 6 and f["delta"][6] == c.zero.const(-1)
    assert first_difference(f["h"], f["h_substituted"], 24) is None
    assert str(f["varsigma"]) == "2"


@pytest.mark.parametrize("q", [2, 3])
def test_elementary_symmetric_support(q):
    c = ctx_T(q, 20)
    coeffs = reconstruct_phi(c)
    for k, ck in enumerate(coeffs):
        if k not in (0, q - 1, q * q - 1):
            assert first_difference(ck, c.exact(c.zero), 20) is None


@pytest.mark.parametrize("name", ["theorem1", "dprod", "alternating", "weil-series",
                                  "det-torsion", "delta-root"])
def test_level_suites_q2(name):
    rep = level_suite(name, 2, 16)
    assert rep["status"] == "pass", rep
    assert rep["schema"] == 1


def test_theorem1_fitted_constants_q3():
    rep = level_suite("theorem1", 3, 24)
    assert rep["status"] == "pass"
    assert rep["fitted"] == {"varsigma": "2", "alternating_c": "l"}
    h2 = next(c for c in rep["checks"] if c["identity"] == "h2")
    assert h2["representative_choices"] == 2 ** 4


def test_weil_series_other_level():
    rep = level_suite("weil-series", 3, 20, parse_poly("T+1", 3))
    assert rep["status"] == "pass"
    assert rep["level"] == "T+1"


def test_unknown_suite():
    with pytest.raises(LevelError):
        level_suite("nope", 2, 10)
