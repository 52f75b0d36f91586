"""Elements of K(t): reduced quotients of polynomials in t with monic
denominator."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .field import Quad
from .poly import Poly, poly_divrem, poly_gcd

_ONE = Fraction(1)


class RatFunc:
    __slots__ = ("num", "den")
    _is_coeff = True

    def __init__(self, num, den=None, _reduced: bool = False):
        num = _as_tpoly(num)
        den = Poly([_ONE], "t") if den is None else _as_tpoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    # -- predicates ---------------------------------------------------------
    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    def is_constant(self) -> bool:
        return self.is_poly() and self.num.degree <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeff(0)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def field_ext(self) -> int:
        return self.num.field_ext() or self.den.field_ext()

    @property
    def degree(self):
        """deg num - deg den (the negated order at infinity)."""
        if self.num.is_zero():
            return float("-inf")
        return self.num.degree - self.den.degree

    # -- arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            if other.var != "t":
                return None
            return RatFunc(other, None, _reduced=True)
        if isinstance(other, (int, Fraction, Quad)):
            return RatFunc(Poly([other], "t"), None, _reduced=True)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if o.den.degree == 0:
            return RatFunc(self.num + o.num * self.den, self.den, _reduced=True)
        if self.den.degree == 0:
            return RatFunc(self.num * o.den + o.num, o.den, _reduced=True)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            if other == 0:
                return RatFunc(Poly((), "t"), None, _reduced=True)
            return RatFunc(self.num * other, self.den, _reduced=True)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return RatFunc(self.num * o.num, self.den, _reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        lc = self.num.lc()
        return RatFunc(self.den / lc, self.num / lc, _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return RatFunc(self.num / other, self.den, _reduced=True)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree == 0 and self.num.degree <= 0:
            return hash(self.num.coeff(0))
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    # -- analysis -------------------------------------------------------------
    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole of rational function")
        return self.num(x) / d

    def has_pole_at(self, x) -> bool:
        return self.den(x) == 0

    def ord_at(self, x) -> float:
        """Order of vanishing at t = x (negative for poles)."""
        return _ord_poly(self.num, x) - _ord_poly(self.den, x)

    def ord_at_infinity(self) -> float:
        if self.num.is_zero():
            return float("inf")
        return self.den.degree - self.num.degree

    def derivative(self) -> "RatFunc":
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(),
                       self.den * self.den)

    def map_scalars(self, fn) -> "RatFunc":
        return RatFunc(self.num.map_coeffs(fn), self.den.map_coeffs(fn))

    def __repr__(self):
        if self.den.degree == 0:
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num}) / ({self.den}))"

    __str__ = __repr__


def _as_tpoly(p) -> Poly:
    if isinstance(p, Poly):
        if p.var != "t":
            raise ValueError("RatFunc requires polynomials in t")
        return p
    if isinstance(p, (int, Fraction, Quad)):
        return Poly([p], "t")
    raise TypeError(f"cannot build a rational function from {p!r}")


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return num, Poly([_ONE], "t")
    if den.degree > 0 and num.degree >= 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = poly_divrem(num, g)[0]
            den = poly_divrem(den, g)[0]
    lc = den.lc()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _ord_poly(p: Poly, x) -> float:
    if p.is_zero():
        return float("inf")
    lin = Poly([-x, _ONE], "t")
    k = 0
    while True:
        q, r = poly_divrem(p, lin)
        if not r.is_zero():
            return k
        p = q
        k += 1


def ratfunc_normalize(n: Poly, d: Poly) -> RatFunc:
    return RatFunc(n, d)


def as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(_as_tpoly(x))


Coeff = Union[Fraction, Quad, RatFunc]
