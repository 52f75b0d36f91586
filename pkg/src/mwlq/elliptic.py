"""Elliptic curves y^2 = x^3 + a2 x^2 + a3 x + a4 over K(t) with the exact
chord-tangent group law."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith.poly import Poly
from .arith.ratfunc import RatFunc, as_ratfunc


class CurveError(ValueError):
    pass


class InvalidPointError(CurveError):
    pass


@dataclass(frozen=True)
class CurvePoint:
    """O when ``x is None``; otherwise the affine point (x, y) over K(t)."""

    x: Optional[RatFunc] = None
    y: Optional[RatFunc] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @staticmethod
    def affine(x, y) -> "CurvePoint":
        return CurvePoint(as_ratfunc(x), as_ratfunc(y))

    def is_polynomial(self) -> bool:
        return not self.is_infinity and self.x.is_poly() and self.y.is_poly()

    def field_ext(self) -> int:
        if self.is_infinity:
            return 0
        return self.x.field_ext() or self.y.field_ext()

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class FunctionFieldCurve:
    a2: RatFunc
    a3: RatFunc
    a4: RatFunc
    normal_form: bool = False

    def f(self, x):
        """x^3 + a2 x^2 + a3 x + a4 evaluated at an element of K(t)."""
        x = as_ratfunc(x)
        return ((x + self.a2) * x + self.a3) * x + self.a4

    def f_poly(self) -> Poly:
        """f as a polynomial in x with K(t) coefficients."""
        return Poly([self.a4, self.a3, self.a2, RatFunc(Fraction(1))], "x")

    def discriminant(self) -> RatFunc:
        a, b, c = self.a2, self.a3, self.a4
        return (a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c
                + 18 * a * b * c)

    def field_ext(self) -> int:
        return self.a2.field_ext() or self.a3.field_ext() or self.a4.field_ext()


def _is_normal_form(a2: RatFunc, a3: RatFunc, a4: RatFunc) -> bool:
    if not (a2.is_poly() and a3.is_poly() and a4.is_poly()):
        return False
    return a2.num.degree == 2 and a3.num.degree == 3 and a4.num.degree <= 3


def curve_from_cubic(a2, a3, a4) -> FunctionFieldCurve:
    a2, a3, a4 = as_ratfunc(a2), as_ratfunc(a3), as_ratfunc(a4)
    E = FunctionFieldCurve(a2, a3, a4, _is_normal_form(a2, a3, a4))
    if E.discriminant().is_zero():
        raise CurveError("cubic has identically vanishing discriminant")
    return E


def point_validate(E: FunctionFieldCurve, P: CurvePoint) -> bool:
    if P.is_infinity:
        return True
    return P.y * P.y == E.f(P.x)


def _require(E, *points):
    for P in points:
        if not point_validate(E, P):
            raise InvalidPointError(f"point is not on the curve: {P!r}")


def point_neg(E: FunctionFieldCurve, P: CurvePoint, check: bool = True) -> CurvePoint:
    if check:
        _require(E, P)
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y)


def point_add(E: FunctionFieldCurve, P: CurvePoint, Q: CurvePoint,
              check: bool = True) -> CurvePoint:
    if check:
        _require(E, P, Q)
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            # vertical chord (this also covers doubling a 2-torsion point)
            return INFINITY
        lam = (3 * P.x * P.x + 2 * E.a2 * P.x + E.a3) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - E.a2 - P.x - Q.x
    y3 = -(P.y + lam * (x3 - P.x))
    return CurvePoint(x3, y3)


def point_sub(E, P, Q, check: bool = True) -> CurvePoint:
    return point_add(E, P, point_neg(E, Q, check), check)


def point_scalar_mul(E: FunctionFieldCurve, n: int, P: CurvePoint,
                     check: bool = True) -> CurvePoint:
    if check:
        _require(E, P)
    if n < 0:
        return point_scalar_mul(E, -n, point_neg(E, P, False), False)
    result = INFINITY
    base = P
    while n:
        if n & 1:
            result = point_add(E, result, base, False)
        n >>= 1
        if n:
            base = point_add(E, base, base, False)
    return result


def linear_combination(E: FunctionFieldCurve, coeffs, points) -> CurvePoint:
    acc = INFINITY
    for c, P in zip(coeffs, points):
        acc = point_add(E, acc, point_scalar_mul(E, c, P, False), False)
    return acc
