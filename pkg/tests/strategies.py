"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from drinfeld.exactfield import ExtElem, Poly, gf, make_extension
from drinfeld.exactfield import poly as P

QS = [2, 3, 4, 5, 7, 8, 9]


def fq_codes(q):
    return st.integers(0, q - 1)


def polys(q, max_deg=4, var="T"):
    return st.lists(fq_codes(q), max_size=max_deg + 1).map(lambda c: Poly(gf(q), c, var))


def nonzero_polys(q, max_deg=4, var="T"):
    return polys(q, max_deg, var).filter(lambda p: not p.is_zero())


def ext_elems(q, n):
    L = make_extension(q, n)
    return st.lists(fq_codes(q), min_size=n, max_size=n).map(lambda c: ExtElem(L, P._trim(list(c))))
