"""Weak-bitangent lines x = alpha t + beta of a normal-form quartic, their
enumeration, and the lift of such lines to sections of E."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from ..arith.field import FieldError, Quad, format_scalar
from ..arith.mpoly import MPoly
from ..arith.poly import Poly, lagrange_interpolate, poly_gcd, poly_resultant, poly_sqrt
from ..arith.ratfunc import RatFunc
from ..arith.roots import exact_roots, factor_rational, real_root_intervals
from ..elliptic import CurvePoint, FunctionFieldCurve, point_validate
from .forms import ProjLine, Quartic, QuarticError, format_point, normalize_point, \
    restrict_to_line

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NotASquareError(QuarticError):
    pass


class FieldExtensionRequired(QuarticError):
    def __init__(self, square_class, msg: str):
        super().__init__(msg)
        self.square_class = square_class


class EnumerationError(QuarticError):
    pass


@dataclass(frozen=True)
class Contact:
    point: Optional[tuple]  # exact projective point (None when not representable)
    multiplicity: int  # local intersection number, 2 or 4
    singular: bool = False


@dataclass(frozen=True)
class ContactDivisor:
    line: ProjLine
    restriction: Poly  # F(t, alpha t + beta, 1)
    lam: object  # leading coefficient of the restriction
    root: Poly  # monic g with restriction = lam * g^2
    contacts: tuple  # (Contact, ...)

    @property
    def kind(self) -> str:
        if any(c.singular for c in self.contacts):
            return "through-singular"
        if len(self.contacts) == 1:
            return "4-fold"
        return "bitangent"

    @property
    def exact(self) -> bool:
        return all(c.point is not None for c in self.contacts)

    def singular_contacts(self) -> list[Contact]:
        return [c for c in self.contacts if c.singular]

    def to_json(self) -> dict:
        return {
            "line": self.line.to_json(),
            "kind": self.kind,
            "lambda": format_scalar(self.lam),
            "contacts": [
                {"point": format_point(c.point) if c.point is not None else None,
                 "multiplicity": c.multiplicity, "singular": c.singular}
                for c in self.contacts],
        }


def _contact_points(L: ProjLine, g: Poly) -> list[tuple[Optional[tuple], int]]:
    a, b = L.affine()
    out: list = []
    if g.degree > 0:
        rep = exact_roots(g)
        for r, m in rep.exact:
            out.append((normalize_point((r, a * r + b, _ONE)), 2 * m))
        for f, m in rep.residual:
            out.extend([(None, 2 * m)] * f.degree)
        if not rep.exact and not rep.residual and g.degree == 2:
            out.extend([(None, 2), (None, 2)])
    at_inf = 2 - max(g.degree, 0)
    if at_inf:
        out.append((normalize_point((_ONE, a, _ZERO)), 2 * at_inf))
    return out


def is_weak_bitangent(F: Quartic, L: ProjLine,
                      singular_points: Sequence[tuple] = ()) -> Optional[ContactDivisor]:
    q = restrict_to_line(F, L)
    if (4 - q.degree) % 2:
        return None
    lam = q.lc()
    g = poly_sqrt(q / lam)
    if g is None:
        return None
    contacts = []
    for pt, m in _contact_points(L, g):
        sing = pt is not None and any(normalize_point(s) == pt for s in singular_points)
        contacts.append(Contact(pt, m, sing))
    if len(contacts) == 0:
        contacts = [Contact(None, 4)]
    return ContactDivisor(L, q, lam, g, tuple(contacts))


# -- enumeration ------------------------------------------------------------

@dataclass(frozen=True)
class NumericLine:
    alpha: complex
    beta: complex
    interval: Optional[tuple] = None  # isolating interval of alpha when real

    def to_json(self) -> dict:
        out = {"alpha": str(self.alpha), "beta": str(self.beta), "exact": False}
        if self.interval is not None:
            out["alpha_interval"] = [str(self.interval[0]), str(self.interval[1])]
        return out


@dataclass(frozen=True)
class BitangentEnumeration:
    exact: tuple  # ((ProjLine, ContactDivisor), ...) sorted by (alpha, beta)
    numeric: tuple  # (NumericLine, ...)

    @property
    def total(self) -> int:
        return len(self.exact) + len(self.numeric)


def restriction_system(F: Quartic) -> list[MPoly]:
    """q_0..q_4 in (alpha, beta) with F(t, alpha t + beta, 1) = sum q_k t^k."""
    t, al, be = MPoly.gens(3)
    sub = F.form.subs([t, al * t + be, MPoly.const(_ONE, 3)], 3)
    coeffs = sub.coefficients_in(0)
    out = []
    for c in coeffs + [MPoly({}, 3)] * (5 - len(coeffs)):
        out.append(MPoly({(e[1], e[2]): v for e, v in c.terms.items()}, 2))
    return out[:5]


def square_conditions(qs: Sequence[MPoly]) -> tuple[MPoly, MPoly]:
    q0, q1, q2, q3, q4 = qs
    e1 = 8 * q1 * q4 * q4 - 4 * q3 * q2 * q4 + q3 * q3 * q3
    w = 4 * q2 * q4 - q3 * q3
    e2 = 64 * q0 * q4 * q4 * q4 - w * w
    return e1, e2


def _in_beta(m: MPoly, alpha) -> Poly:
    """m(alpha, beta) as a polynomial in beta."""
    cs = [_ZERO] * (max(m.degree_in(1), 0) + 1)
    for (i, j), c in m.terms.items():
        cs[j] = cs[j] + c * alpha ** i
    return Poly(cs, "b")


def _lead_in_beta(m: MPoly) -> Poly:
    d = m.degree_in(1)
    cs = [_ZERO] * (m.degree_in(0) + 1)
    for (i, j), c in m.terms.items():
        if j == d:
            cs[i] = cs[i] + c
    return Poly(cs, "a")


def _poly_in_alpha(m: MPoly) -> Poly:
    cs = [_ZERO] * (m.degree_in(0) + 1)
    for (i, j), c in m.terms.items():
        if j:
            raise ValueError("depends on beta")
        cs[i] = cs[i] + c
    return Poly(cs, "a")


def eliminant(e1: MPoly, e2: MPoly, avoid: Poly) -> Poly:
    """Res_beta(e1, e2) as a polynomial in alpha, by evaluation at rational
    points and interpolation."""
    bound = e1.degree_in(1) * e2.degree_in(0) + e2.degree_in(1) * e1.degree_in(0)
    l1, l2 = _lead_in_beta(e1), _lead_in_beta(e2)
    pts = []
    k = 0
    while len(pts) < bound + 1:
        k += 1
        for a in (Fraction(k), Fraction(-k)):
            if l1(a) == 0 or l2(a) == 0 or avoid(a) == 0:
                continue
            pts.append((a, poly_resultant(_in_beta(e1, a), _in_beta(e2, a))))
            if len(pts) == bound + 1:
                break
    return lagrange_interpolate(pts, "a")


def _beta_candidates(polys: Sequence[Poly]) -> list:
    g = Poly((), "b")
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g.is_zero() else poly_gcd(g, p)
    if g.is_zero():
        raise EnumerationError("positive-dimensional family of weak-bitangents")
    if g.degree <= 0:
        return []
    return [r for r, _ in exact_roots(g).exact]


def enumerate_bitangents(F: Quartic, singular_points: Sequence[tuple] = (),
                         through: Optional[tuple] = None,
                         numeric: bool = True) -> BitangentEnumeration:
    """All weak-bitangent lines missing z_o = [0,1,0].

    Lines with rational or quadratic (alpha, beta) are returned exactly and
    re-verified; the others are reported as numeric approximations."""
    if not F.normal_form:
        raise EnumerationError("enumeration needs a normal-form quartic")
    qs = restriction_system(F)
    q4 = _poly_in_alpha(qs[4])
    found: dict = {}

    def consider(alpha, beta):
        if isinstance(alpha, Quad) and isinstance(beta, Quad) and alpha.d != beta.d:
            return
        L = ProjLine.from_affine(alpha, beta)
        if L in found:
            return
        try:
            cd = is_weak_bitangent(F, L, singular_points)
        except QuarticError:
            return
        if cd is not None:
            found[L] = cd

    # alpha with q4(alpha) = 0: the line passes through a point of Z = 0
    for a0, _ in exact_roots(q4).exact:
        q1, q2, q3 = (_in_beta(qs[i], a0) for i in (1, 2, 3))
        q0 = _in_beta(qs[0], a0)
        disc = q1 * q1 - q0 * q2 * 4
        for b0 in _beta_candidates([q3, disc]):
            consider(a0, b0)
    e1, e2 = square_conditions(qs)
    R = eliminant(e1, e2, q4)
    if R.is_zero():
        raise EnumerationError("eliminant vanishes identically (non-reduced input?)")
    numeric_lines: list[NumericLine] = []
    for fac, _ in factor_rational(R):
        if fac.degree <= 2:
            try:
                alphas = [r for r, _ in exact_roots(fac).exact]
            except FieldError:
                alphas = []
            for a0 in alphas:
                if q4(a0) == 0:
                    continue
                for b0 in _beta_candidates([_in_beta(e1, a0), _in_beta(e2, a0)]):
                    consider(a0, b0)
        elif numeric:
            numeric_lines.extend(_numeric_lines(F, fac, e1, e2, qs))
    exact = sorted(found.items(), key=lambda kv: kv[0].sort_key())
    if through is not None:
        through = normalize_point(through)
        exact = [(L, cd) for L, cd in exact if L.contains(through)]
        numeric_lines = []
    return BitangentEnumeration(tuple(exact), tuple(numeric_lines))


def _numeric_lines(F: Quartic, fac: Poly, e1: MPoly, e2: MPoly,
                   qs: Sequence[MPoly]) -> list[NumericLine]:
    mpmath.mp.dps = 50
    cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(fac.coeffs)]
    try:
        intervals = real_root_intervals(fac)
    except Exception:
        intervals = []
    out = []
    for a0 in mpmath.polyroots(cs, maxsteps=400, extraprec=400):
        b_cs = _numeric_beta(e1, a0)
        if len(b_cs) < 2:
            continue
        best = []
        for b0 in mpmath.polyroots(b_cs, maxsteps=400, extraprec=400):
            if _numeric_is_square(qs, a0, b0):
                best.append(b0)
        iv = None
        if abs(mpmath.im(a0)) < mpmath.mpf(10) ** -30:
            for lo, hi in intervals:
                if lo <= mpmath.re(a0) <= hi:
                    iv = (lo, hi)
        for b0 in best:
            out.append(NumericLine(complex(a0), complex(b0), iv))
    return out


def _numeric_beta(m: MPoly, a0) -> list:
    d = m.degree_in(1)
    cs = [mpmath.mpc(0)] * (d + 1)
    for (i, j), c in m.terms.items():
        cs[j] += mpmath.mpf(c.numerator) / c.denominator * a0 ** i
    while cs and abs(cs[-1]) < mpmath.mpf(10) ** -40:
        cs.pop()
    return list(reversed(cs))


def _numeric_is_square(qs, a0, b0) -> bool:
    vals = []
    for m in qs:
        v = mpmath.mpc(0)
        for (i, j), c in m.terms.items():
            v += mpmath.mpf(c.numerator) / c.denominator * a0 ** i * b0 ** j
        vals.append(v)
    q0, q1, q2, q3, q4 = vals
    if abs(q4) < mpmath.mpf(10) ** -30:
        return False
    a = q3 / (2 * q4)
    b = (q2 / q4 - a * a) / 2
    scale = 1 + max(abs(v) for v in vals)
    return (abs(2 * a * b * q4 - q1) < scale * mpmath.mpf(10) ** -25
            and abs(q4 * b * b - q0) < scale * mpmath.mpf(10) ** -25)


# -- sections ----------------------------------------------------------------

def line_to_sections(E: FunctionFieldCurve, F: Quartic, L: ProjLine,
                     allow_extension: bool = False) -> tuple[CurvePoint, CurvePoint]:
    """The two points (alpha t + beta, +-g) of E attached to a weak-bitangent."""
    q = restrict_to_line(F, L)
    g = poly_sqrt(q, extend=True)
    if g is None:
        raise NotASquareError("restriction to the line is not a square")
    d = g.field_ext()
    if d and d != F.field_ext() and not allow_extension:
        raise FieldExtensionRequired(
            q.lc(), f"lift needs sqrt({format_scalar(q.lc())}); twist the normal form")
    a, b = L.affine()
    xi = RatFunc(Poly([b, a], "t"))
    eta = RatFunc(g)
    P = CurvePoint(xi, eta)
    Pm = CurvePoint(xi, -eta)
    if not (point_validate(E, P) and point_validate(E, Pm)):
        raise QuarticError("lifted point failed validation")
    return P, Pm


def infinity_behaviour(P: CurvePoint) -> tuple[int, Optional[tuple]]:
    """(pole order of x at t = oo in the chart s = 1/t, value of
    (s^2 x, s^3 y) at s = 0 when finite)."""
    if P.is_infinity:
        return 0, None
    dx = P.x.degree
    ex = max(0, dx - 2) if dx != float("-inf") else 0
    if ex:
        return int(ex), None
    vx = _leading_at(P.x, 2)
    vy = _leading_at(P.y, 3)
    return 0, (vx, vy)


def _leading_at(r: RatFunc, k: int):
    # value at s = 0 of s^k r(1/s), assuming deg r <= k
    if r.is_zero() or r.degree < k:
        return _ZERO
    return r.num.lc() / r.den.lc()


def section_image_kind(E: FunctionFieldCurve, F: Quartic, P: CurvePoint) -> str:
    if P.is_infinity or not P.is_polynomial():
        return "other"
    dx, dy = P.x.num.degree, P.y.num.degree
    theta = 1 if infinity_behaviour(P)[1] == (_ZERO, _ZERO) else 0
    if dx <= 1 and dy <= 2 and theta == 1:
        return "line"
    if dx <= 2 and dy <= 3 and theta == 0:
        return "conic-tangent-at-z_o"
    return "other"
