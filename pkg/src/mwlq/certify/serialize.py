"""JSON encodings of exact objects: scalars as strings, polynomials as
coefficient arrays lowest degree first."""

from __future__ import annotations

import json
from typing import Sequence

from ..arith.field import format_scalar
from ..arith.poly import Poly, poly_gcd
from ..arith.ratfunc import as_ratfunc
from ..elliptic import CurvePoint


def poly_json(p: Poly) -> list[str]:
    return [format_scalar(c) for c in p.coeffs]


def ratfunc_json(r) -> dict | list:
    r = as_ratfunc(r)
    if r.is_poly():
        return poly_json(r.num)
    return {"num": poly_json(r.num), "den": poly_json(r.den)}


def point_json(P: CurvePoint) -> dict | str:
    if P.is_infinity:
        return "O"
    return {"x": ratfunc_json(P.x), "y": ratfunc_json(P.y)}


def bivariate_json(p: Poly) -> dict:
    """A polynomial in x with K(t) coefficients as a matrix [x power][t power]
    over a common denominator in t."""
    coeffs = [as_ratfunc(c) for c in p.coeffs]
    den = Poly([1], "t")
    for c in coeffs:
        if not c.is_poly():
            den = den * (c.den // poly_gcd(den, c.den))
    rows = [poly_json((c * den).as_poly()) for c in coeffs]
    return {"matrix": rows, "denominator": poly_json(den)}


def matrix_json(m: Sequence[Sequence]) -> list[list[str]]:
    return [[format_scalar(c) for c in row] for row in m]


def dumps(obj) -> str:
    """Canonical, byte-stable JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
