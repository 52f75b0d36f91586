"""Exact arithmetic: Q(sqrt d), polynomials, rational functions, linear algebra, roots."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mwlq.arith.field import (FieldError, Quad, format_scalar, parse_scalar, scalar_sqrt,
                              square_class, squarefree_decompose)
from mwlq.arith.linalg import det, inverse, matmul, nullspace, rank
from mwlq.arith.poly import (Poly, crt, lagrange_interpolate, poly_divrem, poly_gcd,
                             poly_resultant, poly_sqrt, poly_xgcd, sylvester_resultant)
from mwlq.arith.ratfunc import RatFunc
from mwlq.arith.roots import exact_roots, factor_rational, rational_roots

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
nonzero = rationals.filter(lambda x: x != 0)
polys = st.lists(rationals, min_size=1, max_size=5).map(lambda cs: Poly(cs, "t"))
quads = st.tuples(rationals, nonzero).map(lambda ab: Quad.make(ab[0], ab[1], 5))


def _sympy(p: Poly):
    t = sympy.Symbol("t")
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)]
                      or [0], t, domain=sympy.QQ)


# -- Q(sqrt d) ----------------------------------------------------------------

@given(quads, quads, quads)
def test_quad_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(quads)
def test_quad_inverse_and_norm(a):
    assert a * (1 / a) == 1
    assert a * a.conjugate() == a.norm()


def test_quad_make_collapses_rational_and_reduces():
    assert Quad.make(3, 0, 7) == 3
    assert Quad.make(1, 1, 4) == 3
    q = Quad.make(0, 1, 12)
    assert q.d == 3 and q.b == 2


def test_mixed_extensions_rejected():
    with pytest.raises(FieldError):
        Quad(1, 1, 2) + Quad(1, 1, 3)


@given(rationals, nonzero, st.sampled_from([-3, -1, 2, 5, 39121]))
def test_scalar_round_trip(a, b, d):
    x = Quad.make(a, b, d)
    assert parse_scalar(format_scalar(x)) == x


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_scalar("1/0")
    with pytest.raises(ValueError):
        parse_scalar("two")


@given(nonzero)
def test_scalar_sqrt_squares_back(x):
    r = scalar_sqrt(x * x)
    assert r * r == x * x
    s = scalar_sqrt(x)
    assert s * s == x


def test_square_class_and_squarefree():
    assert square_class(Fraction(-288, 1)) == -2
    assert square_class(Fraction(3, 4)) == 3
    assert squarefree_decompose(72) == (6, 2)


# -- polynomials --------------------------------------------------------------

@settings(max_examples=60)
@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_divrem_identity(a, b):
    q, r = poly_divrem(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@settings(max_examples=60)
@given(polys, polys, polys)
def test_gcd_matches_sympy(a, b, c):
    g = poly_gcd(a * c, b * c)
    expected = _sympy(a * c).gcd(_sympy(b * c))
    if expected.is_zero:
        assert g.is_zero()
    else:
        assert _sympy(g) == expected.monic()


@settings(max_examples=40)
@given(polys.filter(lambda p: not p.is_zero()), polys.filter(lambda p: not p.is_zero()))
def test_resultant_agrees_with_sylvester(a, b):
    assert poly_resultant(a, b) == sylvester_resultant(a, b)


def test_gcd_over_quadratic_field():
    r = Quad.make(0, 1, 2)
    p = Poly([-r, 1]) * Poly([1, 0, 1])
    q = Poly([-r, 1]) * Poly([3, 1])
    assert poly_gcd(p, q) == Poly([-r, 1])


def test_xgcd_bezout():
    a = Poly([1, 0, 1])
    b = Poly([-1, 1])
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g and g == Poly([1])


def test_poly_sqrt():
    p = Poly([1, 2, 3])
    assert poly_sqrt(p * p) in (p, -p)
    assert poly_sqrt(Poly([1, 0, 1])) is None
    g = poly_sqrt(Poly([2]) * Poly([1, 1]) ** 2, extend=True)
    assert g is not None and g.field_ext() == 2


def test_crt_and_interpolation():
    m1, m2 = Poly([-1, 1]), Poly([2, 1])
    x = crt([(Poly([5]), m1), (Poly([7]), m2)])
    assert x(Fraction(1)) == 5 and x(Fraction(-2)) == 7
    f = lagrange_interpolate([(Fraction(0), Fraction(1)), (Fraction(1), Fraction(3)),
                              (Fraction(2), Fraction(7))])
    assert f == Poly([1, 1, 1], "x")


# -- rational functions -------------------------------------------------------

def test_ratfunc_reduces_and_evaluates():
    t = Poly([0, 1])
    r = RatFunc(t * t - Poly([1]), t - Poly([1]))
    assert r.is_poly() and r.as_poly() == t + Poly([1])
    s = RatFunc(Poly([1]), t * t)
    assert s.ord_at(Fraction(0)) == -2
    assert s.ord_at_infinity() == 2
    assert (s * RatFunc(t * t)) == RatFunc(Poly([1]))


# -- linear algebra -----------------------------------------------------------

def test_linalg_basics():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert det(m) == 1
    assert matmul(m, inverse(m)) == [[1, 0], [0, 1]]
    sing = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    assert rank(sing) == 1
    for v in nullspace(sing):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in sing)
    assert len(nullspace(sing)) == 2


# -- roots --------------------------------------------------------------------

def test_roots_rational_and_quadratic():
    p = Poly([-2, 0, 1]) * Poly([-3, 1])
    rep = exact_roots(p)
    roots = [r for r, _ in rep.exact]
    assert Fraction(3) in roots
    assert any(isinstance(r, Quad) and r.d == 2 for r in roots)
    assert rational_roots(p) == [Fraction(3)]
    assert [f.degree for f, _ in factor_rational(p)] == [1, 2]
