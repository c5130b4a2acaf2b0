import pytest
from hypothesis import given, strategies as st

from drinfeld.exactfield import Poly, RatFun, monics_of_degree
from drinfeld.series import (INF, SeriesError, TruncSeries, delta_from_h, first_difference,
                             g_aexpansion, h_aexpansion, h_product, identity_report, is_integral,
                             series_to_json, support_congruent, t_of_az, ts_arith,
                             ts_compose_subst)


def K(q):
    return RatFun.gen(q, "T")


def ser(q, d: dict, prec=INF, var="t"):
    return TruncSeries.from_dict({e: K(q).const(0) + c for e, c in d.items()}, prec, var, K(q).zero())


def series_st(q, max_len=6, prec=12):
    T = K(q)
    coeff = st.tuples(st.integers(0, q - 1), st.integers(0, q - 1)).map(lambda ab: T * ab[0] + ab[1])
    return st.builds(lambda cs, v: TruncSeries(cs, v, prec, "t", T.zero()),
                     st.lists(coeff, min_size=1, max_size=max_len), st.integers(0, 3))


def unit_series_st(q, prec=12):
    T = K(q)
    return series_st(q, prec=prec).map(lambda f: f + TruncSeries([T.one()], 0, prec, "t", T.zero())
                                       if f[0].is_zero() else f).filter(lambda f: not f[0].is_zero())


# arithmetic examples

def test_spec_arithmetic_examples():
    one_plus = ser(3, {0: 1, 1: 1}, 5)
    one_minus = ser(3, {0: 1, 1: -1}, 5)
    assert ts_arith("mul", one_plus, one_minus) == ser(3, {0: 1, 2: -1}, 5)
    T = K(3)
    f = ser(3, {0: 1, 2: T})
    inv = f.inverse(order=7)
    assert inv == ser(3, {0: 1, 2: T * 2, 4: T * T, 6: T ** 3 * 2}, 7)
    assert ser(3, {3: 1}).derivative().is_zero()


def test_exact_inverse_needs_order():
    with pytest.raises(SeriesError):
        ser(3, {0: 1, 1: 1}).inverse()


def test_precision_rules():
    f = ser(3, {1: 1, 2: 1}, 10)  # relative precision 9
    g = ser(3, {2: 1}, 6)         # relative precision 4
    assert (f * g).prec == 3 + 4
    assert (f + g).prec == 6
    assert f.frob().prec == 30
    assert f.derivative().prec == 9
    assert f.inverse().prec == -1 + 9


def test_equality_only_below_precision():
    a = ser(3, {0: 1, 5: 1}, 8)
    b = ser(3, {0: 1}, 5)
    assert a == b
    assert first_difference(a, ser(3, {0: 1}, 8)) == 5


def test_compose_subst_examples():
    q = 3
    T = K(q)
    s = ser(q, {0: 1, 2: T}, var="t_a").inverse(order=10).shift(q)
    t = ser(q, {1: 1}, var="t_a")
    assert ts_compose_subst(t, s) == s
    minus = ts_compose_subst(ser(q, {1: -1}, var="t_a"), s)
    assert minus == ser(q, {3: -1, 5: T, 7: -(T * T), 9: T ** 3, 11: -(T ** 4)}, 13, "t_a")
    with pytest.raises(SeriesError):
        ts_compose_subst(t, ser(q, {0: 1, 1: 1}, 5, "t_a"))


def test_t_of_az_examples():
    q = 3
    T = K(q)
    one = Poly.gen(q).one()
    assert t_of_az(one, 8) == ser(q, {1: 1}, 8)
    assert t_of_az(Poly.gen(q), 8) == ser(q, {3: 1, 5: -T, 7: T * T}, 8)
    for a in monics_of_degree(2, 2) + monics_of_degree(3, 1):
        assert t_of_az(a, 30).val == a.field.q ** a.degree


# series ring properties

@pytest.mark.parametrize("q", [2, 3, 5])
@given(data=st.data())
def test_ring_laws(q, data):
    f, g, h = (data.draw(series_st(q)) for _ in range(3))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()


@pytest.mark.parametrize("q", [2, 3])
@given(data=st.data())
def test_inverse_and_division(q, data):
    u = data.draw(unit_series_st(q))
    f = data.draw(series_st(q))
    one = TruncSeries([K(q).one()], 0, INF, "t", K(q).zero())
    assert u * u.inverse() == one
    assert (f / u) * u == f


@pytest.mark.parametrize("q", [2, 3, 4])
@given(data=st.data())
def test_frobenius_is_qth_power(q, data):
    f, g = data.draw(series_st(q, 4)), data.draw(series_st(q, 4))
    assert f.frob() == f ** q
    assert (f * g).frob() == f.frob() * g.frob()


@pytest.mark.parametrize("q", [2, 3, 5])
@given(data=st.data())
def test_derivative_leibniz(q, data):
    f, g = data.draw(series_st(q)), data.draw(series_st(q))
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


@pytest.mark.parametrize("q", [2, 3])
@given(data=st.data())
def test_substitution_is_ring_map(q, data):
    f, g = data.draw(series_st(q)), data.draw(series_st(q))
    s = t_of_az(Poly.gen(q), 40)
    assert ts_compose_subst(f * g, s) == ts_compose_subst(f, s) * ts_compose_subst(g, s)


# h, g, Delta

@pytest.mark.parametrize("q,N", [(2, 40), (3, 40), (4, 40), (5, 40), (7, 30)])
def test_h_shape(q, N):
    h = h_product(q, N)
    assert h.val == 1 and h[1] == K(q).const(-1)
    assert support_congruent(h, 1, q - 1)
    assert is_integral(h)
    assert h == h_aexpansion(q, N)


def test_h_q2_second_coefficient():
    assert h_aexpansion(2, 10)[2] == K(2).one()


def test_h_q3_known_terms():
    T = K(3)
    h = h_product(3, 12)
    assert h == ser(3, {1: -1, 5: -1, 7: T ** 3 - T, 9: -1, 11: -(T ** 3) + T}, 12)


def test_delta_leading_q3():
    d = delta_from_h(h_product(3, 20))
    assert d.val == 2 and d[2] == K(3).const(-1)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_g_shape(q):
    g = g_aexpansion(q, 30)
    assert g[0] == K(q).one()
    assert support_congruent(g, 0, q - 1)
    assert is_integral(g)


def test_identity_report_precision_floor():
    a = ser(3, {0: 1}, 5)
    r = identity_report("x", a, a, 8)
    assert r["status"] == "fail" and r["compared_below"] == 5
    assert identity_report("x", a, a, 5)["status"] == "pass"


def test_series_json():
    h = h_product(3, 8)
    js = series_to_json(h)
    assert js["variable"] == "t" and js["truncation"] == 8
    assert js["coefficients"][0] == [1, "2"]
    assert js["field"] == "F_3(T)"
