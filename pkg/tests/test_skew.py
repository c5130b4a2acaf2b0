import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from drinfeld.exactfield import Poly, RatFun, gf, make_extension, parse_poly
from drinfeld.skew import (DrinfeldModule, SkewPoly, determinant_module, f_polynomial,
                           moore_det, moore_product, phi_of_a, skew_compose, weil_pairing)

from strategies import ext_elems, polys


def rho(q):
    return DrinfeldModule.carlitz(RatFun.gen(q, "T"))


def test_compose_examples():
    for q in (2, 3, 4):
        T = RatFun.gen(q, "T")
        r = rho(q).phi_T
        assert r @ r == SkewPoly([T * T, T + T ** q, T.one()])
    L = make_extension(3, 2)
    c = L.gen() + 1
    xq = SkewPoly([L.zero(), L.one()])
    assert xq @ SkewPoly([c]) == SkewPoly([L.zero(), c ** 3])


def test_phi_of_a_examples():
    q = 3
    T = RatFun.gen(q, "T")
    r = rho(q)
    assert phi_of_a(r, Poly.gen(q).one()) == SkewPoly([T.one()])
    assert phi_of_a(r, parse_poly("T^2", q)) == SkewPoly([T * T, T + T ** q, T.one()])
    L = make_extension(3, 2)
    g, d = L.gen(), L.gen() + 2
    phi = DrinfeldModule.rank2(L.one(), g, d)
    assert phi(parse_poly("T^2", q)).leading == d ** (1 + q * q)


@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (4, 1)])
@given(data=st.data())
def test_phi_is_ring_homomorphism(q, n, data):
    st_e = ext_elems(q, n)
    gamma, g = data.draw(st_e), data.draw(st_e)
    d = data.draw(st_e.filter(lambda x: not x.is_zero()))
    phi = DrinfeldModule(SkewPoly([gamma if not gamma.is_zero() else gamma.const(1), g, d]))
    a, b = data.draw(polys(q, 2)), data.draw(polys(q, 2))
    assert phi(a * b) == phi(a) @ phi(b)
    assert phi(a + b) == phi(a) + phi(b)
    assert phi(a) @ phi(b) == phi(b) @ phi(a)


@given(data=st.data())
def test_composition_associative(data):
    st_e = ext_elems(3, 2)
    f, g, h = (SkewPoly([data.draw(st_e) for _ in range(3)]) for _ in range(3))
    assert (f @ g) @ h == f @ (g @ h)
    x = data.draw(st_e)
    assert (f @ g)(x) == f(g(x))


def test_f_polynomial_examples():
    for q in (2, 3, 5):
        T = RatFun.gen(q, "T")
        one = Poly.gen(q).one()
        assert f_polynomial(one) == {0: T.one()}
        assert f_polynomial(Poly.gen(q)) == {0: T.one(), q - 1: T}
        assert f_polynomial(Poly.gen(q) ** 2) == {0: T.one(), q * q - q: T + T ** q, q * q - 1: T * T}


def test_determinant_module_examples():
    T = RatFun.gen(3, "T")
    phi = DrinfeldModule.rank2(T, T + 1, -T.one())
    assert determinant_module(phi).phi_T == rho(3).phi_T
    L = make_extension(3, 2)
    h = L.gen() + 1
    phi = DrinfeldModule.rank2(L.one(), L.gen(), -(h ** 2))
    assert determinant_module(phi).phi_T == SkewPoly([L.one(), h ** 2])


def test_conjugation_scales_coefficients():
    q = 3
    L = make_extension(q, 2)
    g, d, c = L.gen(), L.gen() + 2, L.gen() + 1
    phi = DrinfeldModule.rank2(L.one(), g, d)
    conj = phi.conjugate(c)
    assert conj.g == c * g / c ** q
    assert conj.delta == c * d / c ** (q * q)
    assert determinant_module(conj).phi_T[1] == -(c * d / c ** (q * q))


def test_moore_small_cases():
    L = make_extension(3, 2)
    x, y = L.gen(), L.gen() + 1
    assert moore_det([x]) == x
    assert moore_det([x, y]) == x * y ** 3 - x ** 3 * y
    assert moore_det([x, x * 2]).is_zero()


def test_moore_product_formula_random():
    L = make_extension(3, 4)
    rng = np.random.default_rng(2024)
    for n in (1, 2, 3):
        for _ in range(40):
            xs = [L.random(rng) for _ in range(n)]
            assert moore_det(xs) == moore_product(xs)


def test_moore_independence_exhaustive_f9():
    L = make_extension(3, 2)
    F = gf(3)
    elems = list(L.elements())
    for x, y in itertools.product(elems, repeat=2):
        dependent = any(not (a.is_zero() and b.is_zero()) and (x * a + y * b).is_zero()
                        for a in F.elements() for b in F.elements())
        assert moore_det([x, y]).is_zero() == dependent


def test_weil_pairing_formula_cases():
    L = make_extension(3, 2)
    phi = DrinfeldModule.rank2(L.gen(), L.one(), L.gen() + 1)
    x, y = L.gen() + 2, L.gen() * 2
    T = Poly.gen(3)
    assert weil_pairing(phi, T, x, y) == moore_det([x, y])
    assert weil_pairing(phi, T ** 2, x, y) == moore_det([phi.phi_T(x), y]) + moore_det([x, phi.phi_T(y)])
    for a in (T, T ** 2, T ** 2 + 1, T ** 3 + T):
        assert weil_pairing(phi, a, x, x).is_zero()


def test_skew_compose_matches_evaluation():
    L = make_extension(2, 4)
    rng = np.random.default_rng(5)
    for _ in range(20):
        f = SkewPoly([L.random(rng) for _ in range(3)])
        g = SkewPoly([L.random(rng) for _ in range(2)])
        x = L.random(rng)
        assert skew_compose(f, g)(x) == f(g(x))
