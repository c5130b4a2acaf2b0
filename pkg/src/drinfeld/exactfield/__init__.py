"""Exact arithmetic for F_q, A = F_q[T], K = F_q(T), F_{q^n} and Kummer level fields."""
from .extension import ExtElem, ExtField, is_irreducible, least_irreducible, make_extension
from .fq import FiniteField, FqElem, gf, prime_power
from .kummer import LAMBDA, KummerField, kummer_field
from .poly import Poly, enumerate_monics, monics_of_degree, poly_arith, poly_gcd, polys_of_degree_below
from .ratfun import RatFun, ratfun_arith
from .text import parse_ext, parse_fq, parse_kummer, parse_poly, parse_ratfun


def frobenius_q(x):
    """x -> x^q for any supported element (a field endomorphism)."""
    return x.frob()


__all__ = [
    "ExtElem", "ExtField", "FiniteField", "FqElem", "KummerField", "LAMBDA", "Poly", "RatFun",
    "enumerate_monics", "frobenius_q", "gf", "is_irreducible", "kummer_field",
    "least_irreducible", "make_extension", "monics_of_degree", "parse_ext", "parse_fq",
    "parse_kummer", "parse_poly", "parse_ratfun", "poly_arith", "poly_gcd", "polys_of_degree_below", "prime_power",
    "ratfun_arith",
]
