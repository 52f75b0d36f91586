"""Semi-reduced divisors on E and their Mumford representations (a, b).

Only divisors of degree at most three are handled; ``sum3`` turns a degree
three divisor into the single point P with P1 + P2 + P3 - 3O ~ P - O.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arith.poly import Poly, crt, poly_divrem
from .arith.ratfunc import RatFunc, as_ratfunc
from .conic import Conic
from .elliptic import (CurvePoint, FunctionFieldCurve, InvalidPointError, point_add,
                       point_validate)

_ONE = RatFunc(Fraction(1))


class DivisorError(ValueError):
    pass


class ConicDegreeError(ValueError):
    """b does not come from three line-sections (degree bounds violated)."""


@dataclass(frozen=True)
class SemiReducedDivisor:
    points: tuple  # ((CurvePoint, multiplicity), ...)

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.points)

    def expanded(self) -> list[CurvePoint]:
        return [P for P, n in self.points for _ in range(n)]


@dataclass(frozen=True)
class MumfordPair:
    a: Poly  # monic in x over K(t)
    b: Poly


@dataclass(frozen=True)
class Sum3Result:
    point: CurvePoint
    b0: object  # constant element of K(t) (returned as RatFunc)
    b1: RatFunc
    x4: RatFunc
    y4: RatFunc
    u: Poly  # cofactor: b^2 - f = u * a
    pair: MumfordPair


@dataclass(frozen=True)
class Sum3Identity:
    """The divisor sums to O (deg_x b < 2)."""

    pair: MumfordPair


def divisor_build(points: Sequence) -> SemiReducedDivisor:
    merged: list[list] = []
    for item in points:
        if isinstance(item, CurvePoint):
            P, n = item, 1
        else:
            P, n = item
        if n < 1:
            raise DivisorError("multiplicities must be positive")
        if P.is_infinity:
            raise DivisorError("O cannot occur in a semi-reduced divisor")
        for entry in merged:
            if entry[0] == P:
                entry[1] += n
                break
        else:
            merged.append([P, n])
    for i, (P, n) in enumerate(merged):
        if P.y == 0 and n > 1:
            raise DivisorError("a point with P = iota(P) must have multiplicity 1")
        for Q, _ in merged[i + 1:]:
            if Q.x == P.x:
                raise DivisorError("divisor contains a pair P, iota(P)")
    return SemiReducedDivisor(tuple((P, n) for P, n in merged))


def _x_linear(xi) -> Poly:
    return Poly([-xi, _ONE], "x")


def _local_branch(E: FunctionFieldCurve, P: CurvePoint, n: int) -> Poly:
    """Taylor polynomial (degree < n) in h = x - xi of the branch of
    sqrt(f) through P, from the divisibility (x - xi)^n | b^2 - f."""
    f = E.f_poly().shift(P.x)  # f(xi + h)
    y = [P.y]
    for k in range(1, n):
        acc = f.coeff(k)
        for i in range(1, k):
            acc = acc - y[i] * y[k - i]
        y.append(acc / (2 * P.y))
    # re-centre at x: b(x) = sum y_k (x - xi)^k
    h = _x_linear(P.x)
    out = Poly((), "x")
    for c in reversed(y):
        out = out * h + c
    return out


def mumford_from_divisor(E: FunctionFieldCurve, D: SemiReducedDivisor) -> MumfordPair:
    if D.degree > 3:
        raise DivisorError("only divisors of degree <= 3 are supported")
    if D.degree == 0:
        return MumfordPair(Poly([_ONE], "x"), Poly((), "x"))
    for P, _ in D.points:
        if not point_validate(E, P):
            raise InvalidPointError(f"point is not on the curve: {P!r}")
    a = Poly([_ONE], "x")
    residues = []
    for P, n in D.points:
        m = _x_linear(P.x) ** n
        a = a * m
        residues.append((_local_branch(E, P, n), m))
    b = crt(residues)
    pair = MumfordPair(a, b)
    if not mumford_validate(E, pair):
        raise DivisorError("internal error: Mumford pair failed validation")
    return pair


def mumford_validate(E: FunctionFieldCurve, pair: MumfordPair,
                     divisor: Optional[SemiReducedDivisor] = None) -> bool:
    a, b = pair.a, pair.b
    if a.is_zero() or a.lc() != 1:
        return False
    if not b.is_zero() and b.degree >= a.degree:
        return False
    if divisor is not None:
        expect = Poly([_ONE], "x")
        for P, n in divisor.points:
            expect = expect * _x_linear(P.x) ** n
        if expect != a:
            return False
    r = poly_divrem(b * b - E.f_poly(), a)[1]
    return r.is_zero()


def sum3(E: FunctionFieldCurve, D: SemiReducedDivisor,
         verify: bool = True) -> Union[Sum3Result, Sum3Identity]:
    if D.degree != 3:
        raise DivisorError("sum3 needs a divisor of degree 3")
    pair = mumford_from_divisor(E, D)
    a, b = pair.a, pair.b
    if b.degree < 2:
        if verify:
            _check_fold(E, D, None)
        return Sum3Identity(pair)
    u, r = poly_divrem(b * b - E.f_poly(), a)
    if not r.is_zero():
        raise DivisorError("a does not divide b^2 - f")
    b0 = b.coeff(2)
    # u = b0^2 (x - x4)
    if u.degree != 1 or u.coeff(1) != b0 * b0:
        raise DivisorError("cofactor has unexpected shape")
    x4 = as_ratfunc(-u.coeff(0) / (b0 * b0))
    y4 = as_ratfunc(-b(x4))
    # b + y4 = b0 (x - x4)(x - b1)
    q, r = poly_divrem(b + y4, _x_linear(x4) * b0)
    if not r.is_zero() or q.degree != 1:
        raise DivisorError("b + y4 is not divisible by x - x4")
    b1 = as_ratfunc(-q.coeff(0))
    P = CurvePoint(x4, y4)
    if verify:
        if not point_validate(E, P):
            raise DivisorError("P_d is not on the curve")
        _check_fold(E, D, P)
        if any(P == Q for Q, _ in D.points):
            raise DivisorError("P_d coincides with a support point")
    return Sum3Result(P, as_ratfunc(b0), b1, x4, y4, u, pair)


def _check_fold(E, D, P):
    acc = CurvePoint()
    for Q in D.expanded():
        acc = point_add(E, acc, Q, False)
    target = CurvePoint() if P is None else P
    if acc != target:
        raise DivisorError("sum3 disagrees with the chord-tangent sum")


def _const_of(c) -> object:
    c = as_ratfunc(c)
    if not c.is_constant():
        raise ConicDegreeError("b0 is not a constant")
    return c.constant_value()


def _poly_of(c, bound: int) -> Poly:
    c = as_ratfunc(c)
    if not c.is_poly() or c.num.degree > bound:
        raise ConicDegreeError("coefficient of b exceeds the line-section degree bound")
    return c.num


def conic_from_b(result: Sum3Result) -> Conic:
    """The conic b(t, x) = 0 homogenized in (T, X, Z)."""
    b = result.pair.b
    _const_of(result.b0)
    _poly_of(result.b1, 1)
    _poly_of(result.x4, 1)
    c2 = _const_of(b.coeff(2))
    c1 = _poly_of(b.coeff(1), 1)
    c0 = _poly_of(b.coeff(0), 2)
    # b = c2 x^2 + (c1_0 + c1_1 t) x + (c0_0 + c0_1 t + c0_2 t^2)
    return Conic.from_coefficients([
        c0.coeff(2),  # T^2
        c2,  # X^2
        c0.coeff(0),  # Z^2
        c1.coeff(1),  # TX
        c0.coeff(1),  # TZ
        c1.coeff(0),  # XZ
    ])
