"""Factorisation over Q and exact roots in Q or one quadratic extension.

Factoring is delegated to sympy; everything returned here is converted back
to Fraction / Quad and every root is re-checked by exact substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy

from .field import FieldError, Quad, conjugate, scalar_sqrt
from .poly import Poly

_X = sympy.Symbol("_z")


def _to_sympy(p: Poly) -> sympy.Poly:
    cs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)]
    return sympy.Poly(cs, _X, domain=sympy.QQ)


def _from_sympy(sp: sympy.Poly, var: str) -> Poly:
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())]
    return Poly(cs, var)


def factor_rational(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q with multiplicities."""
    if p.degree <= 0:
        return []
    if not p.is_rational():
        raise FieldError("factor_rational needs rational coefficients")
    _, facs = _to_sympy(p).factor_list()
    out = [(_from_sympy(f, p.var).monic(), int(e)) for f, e in facs]
    out.sort(key=lambda fe: (fe[0].degree, [str(c) for c in fe[0].coeffs]))
    return out


def norm_poly(p: Poly) -> Poly:
    """p * conj(p), a polynomial with rational coefficients."""
    d = p.field_ext()
    if not d:
        return p
    return p * p.map_coeffs(conjugate)


def quadratic_roots(q: Poly) -> list:
    """Roots of a quadratic (as Fraction or Quad)."""
    a, b, c = q.coeff(2), q.coeff(1), q.coeff(0)
    disc = b * b - 4 * a * c
    s = scalar_sqrt(disc)
    if s is None:
        raise FieldError("root outside the supported quadratic tower")
    return [(-b + s) / (2 * a), (-b - s) / (2 * a)]


@dataclass(frozen=True)
class RootReport:
    exact: tuple  # ((root, multiplicity), ...)
    numeric: tuple  # ((complex approximation, multiplicity), ...)
    residual: tuple  # factors of degree > 2 (rational coefficients), with mult


def exact_roots(p: Poly, numeric: bool = False, dps: int = 40) -> RootReport:
    """Roots of p lying in Q or in a quadratic extension compatible with p.

    For rational p every quadratic factor contributes its two conjugate roots
    (possibly in different extensions for different factors).  For p over
    Q(sqrt d) only roots in Q(sqrt d) are returned.  Factors of higher degree
    are listed in ``residual`` and, with ``numeric=True``, approximated."""
    if p.is_zero():
        raise ValueError("zero polynomial has no finite root set")
    d = p.field_ext()
    base = norm_poly(p) if d else p
    exact = []
    numer = []
    residual = []
    for f, e in factor_rational(base):
        if f.degree == 1:
            cands = [-f.coeff(0)]
        elif f.degree == 2:
            try:
                cands = quadratic_roots(f)
            except FieldError:
                cands = []
        else:
            cands = []
        found = False
        for r in cands:
            if isinstance(r, Quad) and d and r.d != d:
                continue
            if d:
                m = _multiplicity(p, r)
                if m:
                    exact.append((r, m))
                    found = True
            else:
                exact.append((r, e))
                found = True
        if not found and f.degree > 2:
            residual.append((f, e))
            if numeric:
                for z in sympy.Poly(_to_sympy(f)).nroots(n=dps):
                    numer.append((complex(z), e))
    exact = _dedupe(exact)
    return RootReport(tuple(exact), tuple(numer), tuple(residual))


def _multiplicity(p: Poly, r) -> int:
    m = 0
    q = p
    while not q.is_zero() and q(r) == 0:
        m += 1
        q = q.derivative()
    return m


def _dedupe(pairs):
    out = []
    for r, m in pairs:
        if any(r == s for s, _ in out):
            continue
        out.append((r, m))
    return out


def rational_roots(p: Poly) -> list[Fraction]:
    return [r for r, _ in exact_roots(p).exact if not isinstance(r, Quad)]


def real_root_intervals(f: Poly) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals with rational endpoints for the real roots of a
    squarefree rational polynomial."""
    out = []
    for (a, b), _ in _to_sympy(f).intervals():
        out.append((Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))))
    return out


def find_root_near(f: Poly, approx: complex) -> Optional[object]:
    """Exact root of f in Q or Q(sqrt d) closest to ``approx``, if any."""
    best = None
    for r, _ in exact_roots(f).exact:
        dist = abs(complex(r) - approx)
        if best is None or dist < best[0]:
            best = (dist, r)
    return None if best is None else best[1]
