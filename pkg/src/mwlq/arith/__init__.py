"""Exact arithmetic: scalars, polynomials, rational functions."""

from .field import (FieldError, Quad, Scalar, conjugate, extension_of, format_scalar,
                    is_rational, parse_scalar, scalar_sqrt, square_class, to_scalar)
from .mpoly import MPoly
from .poly import (DEG_ZERO, Poly, crt, lagrange_interpolate, poly_divrem, poly_exact_div,
                   poly_gcd, poly_resultant, poly_sqrt, poly_xgcd, subresultant_prs,
                   sylvester_resultant)
from .ratfunc import RatFunc, as_ratfunc, ratfunc_normalize
from .roots import exact_roots, factor_rational, rational_roots

__all__ = [
    "DEG_ZERO", "FieldError", "MPoly", "Poly", "Quad", "RatFunc", "Scalar",
    "as_ratfunc", "conjugate", "crt", "exact_roots", "extension_of", "factor_rational",
    "format_scalar", "is_rational", "lagrange_interpolate", "parse_scalar",
    "poly_divrem", "poly_exact_div", "poly_gcd", "poly_resultant", "poly_sqrt",
    "poly_xgcd", "ratfunc_normalize", "rational_roots", "scalar_sqrt", "square_class",
    "subresultant_prs", "sylvester_resultant", "to_scalar",
]
