import pytest

from drinfeld.exactfield import Poly, make_extension, parse_poly
from drinfeld.skew import DrinfeldModule, moore_det, phi_of_a
from drinfeld.torsionlab import (BadLevelError, embedding, kernel_basis, make_afield,
                                 scan_torsion, seeded_generators, span, splitting_degree,
                                 torsion_space, weil_lab, weil_property_suite)


def T(q):
    return Poly.gen(q)


def test_afield_examples():
    A = make_afield(3, 1, 1)
    assert A.gamma(parse_poly("T^2+1", 3)) == A.field(2)
    A0 = make_afield(3, 1, 0)
    assert T(3) in A0.bad_levels()
    A9 = make_afield(3, 2, make_extension(3, 2).gen())
    assert A9.gamma(parse_poly("T^2+1", 3)).is_zero()
    assert [str(b) for b in A9.bad_levels()] == ["T^2+1"]


def test_carlitz_T_torsion_q3():
    K = make_extension(3, 1)
    rho = DrinfeldModule.carlitz(K.one())
    ts = torsion_space(rho, T(3))
    assert ts.size == 3
    assert ts.ambient.order == 9
    assert sorted(p.index() for p in ts.points) == sorted(p.index() for p in scan_torsion(rho, T(3), 2))


@pytest.mark.parametrize("q,n,a", [(3, 1, "T"), (3, 2, "T"), (2, 2, "T"), (2, 1, "T^2"), (3, 1, "T+1")])
def test_torsion_matches_scan(q, n, a):
    K = make_extension(q, n)
    rng = seeded_generators(11, 1)[0]
    A = make_afield(q, n, K.gen() if n > 1 else K.one())
    for _ in range(3):
        phi = A.random_module(rng)
        lev = parse_poly(a, q)
        if A.gamma(lev).is_zero():
            continue
        k = splitting_degree(phi_of_a(phi, lev), n, 12)
        if k is None or q ** (n * k) > 6561:
            continue
        ts = torsion_space(phi, lev)
        scanned = scan_torsion(phi, lev, k)
        assert ts.size == len(scanned) == q ** (2 * lev.degree)
        assert sorted(p.index() for p in ts.points) == sorted(p.index() for p in scanned)


def test_torsion_is_vector_space():
    A = make_afield(3, 2, make_extension(3, 2).gen())
    rng = seeded_generators(3, 1)[0]
    phi = A.random_module(rng)
    ts = torsion_space(phi, T(3))
    pts = set(ts.points)
    assert len(pts) == 9
    for x in ts.points[:5]:
        for y in ts.points:
            assert x + y in pts
            assert x * 2 in pts


def test_t2_torsion_contains_t_torsion():
    A = make_afield(3, 1, 1)
    phi = A.random_module(seeded_generators(4, 1)[0])
    t1 = torsion_space(phi, T(3))
    t2 = torsion_space(phi, T(3) ** 2)
    assert t2.size == 81
    emb = embedding(t1.ambient, t2.ambient) if t2.ambient.n % t1.ambient.n == 0 else None
    if emb is not None:
        img = {emb(x) for x in t1.points}
        assert img <= set(t2.points)


def test_bad_level_rejected():
    A = make_afield(3, 1, 0)
    phi = A.module(A.field.one(), A.field.one())
    with pytest.raises(BadLevelError):
        torsion_space(phi, T(3))
    with pytest.raises(BadLevelError):
        weil_lab(3, 1, T(3), A.field.zero(), trials=1)


def test_kernel_basis_of_frobenius_minus_identity():
    L = make_extension(3, 4)
    fixed = kernel_basis(L, lambda y: y.frob(2) - y)
    assert len(span(fixed, L.base)) == 9


def test_seeded_generators_deterministic():
    a = [int(g.integers(1 << 30)) for g in seeded_generators(7, 4)]
    b = [int(g.integers(1 << 30)) for g in seeded_generators(7, 4)]
    assert a == b and len(set(a)) == 4


def test_weil_suite_a_T_is_moore():
    A = make_afield(3, 2, make_extension(3, 2).gen())
    rng = seeded_generators(7, 1)[0]
    phi = A.random_module(rng)
    rep = weil_property_suite(phi, T(3), rng, samples=50)
    assert rep["status"] == "pass"
    names = {c["name"] for c in rep["checks"]}
    assert {"values-in-psi-torsion", "alternating", "bilinear", "w_T-is-moore"} <= names
    ts = torsion_space(phi, T(3))
    from drinfeld.skew import weil_pairing
    for x in ts.points[:4]:
        for y in ts.points[:4]:
            assert weil_pairing(ts.module_L, T(3), x, y) == moore_det([x, y])


def test_weil_lab_small_and_deterministic():
    r1 = weil_lab(3, 1, T(3), trials=3, seed=5, samples=40)
    r2 = weil_lab(3, 1, T(3), trials=3, seed=5, samples=40)
    assert r1 == r2
    assert r1["status"] == "pass"
    assert r1["nondegenerate_count"] == 3


def test_weil_lab_t2_seed7():
    rep = weil_lab(3, 2, T(3) ** 2, trials=1, seed=7, samples=60)
    assert rep["status"] == "pass"
