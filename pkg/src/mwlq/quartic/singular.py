"""Singular points of plane quartics and their ADE types.

Points are located by eliminating x from the affine partial derivatives,
factoring the eliminant over Q and verifying each candidate exactly.  Types
are read off from the multiplicity, the tangent cone and, for cuspidal
double points, a chain of blowups (A_n blows up to A_(n-2)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..arith.field import FieldError, format_scalar
from ..arith.mpoly import MPoly
from ..arith.poly import Poly, poly_gcd, poly_resultant
from ..arith.ratfunc import RatFunc
from ..arith.roots import exact_roots
from .forms import Quartic, QuarticError, format_point, normalize_point, point_key

_ZERO = Fraction(0)
_ONE = Fraction(1)
SUPPORTED = ("A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "E6")


class NonReducedError(QuarticError):
    pass


@dataclass(frozen=True)
class SingularityRecord:
    point: Optional[tuple]  # exact projective point, None if not representable
    kind: str  # "A1".."A6", "D4", "D5", "E6" or "unsupported"
    multiplicity: int
    tangent_cone: tuple = ()  # coefficients of the lowest-order form (u, v)
    branch_tangents: tuple = ()  # directions (du, dv) in the local chart
    transcript: tuple = ()
    approx: Optional[tuple] = None

    @property
    def supported(self) -> bool:
        return self.kind in SUPPORTED

    @property
    def a_index(self) -> Optional[int]:
        if self.kind.startswith("A"):
            return int(self.kind[1:])
        return None

    def to_json(self) -> dict:
        out = {"type": self.kind, "multiplicity": self.multiplicity,
               "transcript": list(self.transcript)}
        if self.point is not None:
            out["point"] = format_point(self.point)
        if self.approx is not None:
            out["approx"] = [str(c) for c in self.approx]
        return out


# -- local equations -------------------------------------------------------

def local_equation(F: Quartic, p: Sequence) -> tuple[MPoly, tuple]:
    """g(u, v) with g(0,0) = 0 describing F near p in an affine chart, plus
    the chart description (which coordinate was set to 1)."""
    p = normalize_point(p)
    u, v = MPoly.gens(2)
    if p[2] != 0:
        subs = [u + p[0], v + p[1], MPoly.const(_ONE, 2)]
        chart = ("Z", "T", "X")
    elif p[1] != 0:
        q = [c / p[1] for c in p]
        subs = [u + q[0], MPoly.const(_ONE, 2), v]
        chart = ("X", "T", "Z")
    else:
        subs = [MPoly.const(_ONE, 2), u, v]
        chart = ("T", "X", "Z")
    return F.form.subs(subs, 2), chart


def _binary(m: MPoly, k: int) -> list:
    """Coefficients c_i of u^(k-i) v^i in the degree-k part."""
    return [m.coeff((k - i, i)) for i in range(k + 1)]


def _binary_roots(cs: Sequence) -> list[tuple[tuple, int]]:
    """Roots (direction (du, dv), multiplicity) of the binary form
    sum cs[i] u^(k-i) v^i, exact when rational or quadratic."""
    k = len(cs) - 1
    # directions with v != 0: (s, 1) with sum cs[i] s^(k-i) = 0
    p = Poly(list(reversed(cs)), "s")  # coefficient of s^(k-i) is cs[i]
    out = []
    inf_mult = k - p.degree if not p.is_zero() else k
    if inf_mult:
        out.append(((_ONE, _ZERO), inf_mult))
    if p.degree > 0:
        rep = exact_roots(p)
        if rep.residual:
            raise FieldError("tangent directions outside the quadratic tower")
        for r, m in rep.exact:
            out.append(((r, _ONE), m))
    return out


def _rotate_to_v_squared(g: MPoly, q2: Sequence) -> MPoly:
    """Change coordinates so the rank-one quadratic part becomes c v^2."""
    a, b, c = q2  # a u^2 + b uv + c v^2 = (rank one) multiple of l^2
    u, v = MPoly.gens(2)
    if c != 0:
        # l = v + (b / 2c) u ; new v' = l
        return g.subs([u, v - u * (b / (2 * c))], 2)
    # c == 0 forces b == 0; quadratic part a u^2: swap roles
    return g.subs([v, u], 2)


def _a_index(g: MPoly, transcript: list, depth: int = 0) -> Optional[int]:
    """For g of order 2 with rank-one quadratic part return n such that the
    singularity is A_n (n >= 2), or None if the chain does not terminate."""
    if depth > 8:
        transcript.append("blowup chain too long: not a simple singularity")
        return None
    q2 = _binary(g, 2)
    h = _rotate_to_v_squared(g, q2)
    u, w = MPoly.gens(2)
    blown = h.subs([u, u * w], 2)
    # divide by u^2 (exact: every term of h has order >= 2 and the v^2 part
    # contributes u^2 w^2)
    terms = {}
    for (i, j), c in blown.terms.items():
        if i < 2:
            transcript.append("strict transform division failed")
            return None
        terms[(i - 2, j)] = c
    g1 = MPoly(terms, 2)
    order = g1.min_degree()
    transcript.append(f"blowup {depth + 1}: strict transform has order {order} at the origin")
    if order == 1:
        return 2
    if order != 2:
        transcript.append("unexpected order after blowup")
        return None
    a, b, c = _binary(g1, 2)
    disc = b * b - 4 * a * c
    if disc != 0:
        transcript.append("strict transform has a node")
        return 3
    inner = _a_index(g1, transcript, depth + 1)
    return None if inner is None else inner + 2


def classify_point(F: Quartic, p: Sequence) -> SingularityRecord:
    p = normalize_point(p)
    g, chart = local_equation(F, p)
    m = g.min_degree()
    transcript = [f"chart {chart[0]}=1, local coordinates ({chart[1]}, {chart[2]})",
                  f"multiplicity {m}"]
    if m < 2:
        raise QuarticError("point is not singular")
    cone = tuple(_binary(g, m))
    if m == 2:
        a, b, c = cone
        disc = b * b - 4 * a * c
        if disc != 0:
            transcript.append("quadratic part has rank 2: node")
            try:
                br = tuple(d for d, _ in _binary_roots(cone))
            except FieldError:
                br = ()
            return SingularityRecord(p, "A1", 2, cone, br, tuple(transcript))
        transcript.append("quadratic part has rank 1: blow up")
        n = _a_index(g, transcript)
        tan = tuple(d for d, _ in _binary_roots(cone))
        if n is None or n > 6:
            return SingularityRecord(p, "unsupported", 2, cone, tan, tuple(transcript))
        return SingularityRecord(p, f"A{n}", 2, cone, tan, tuple(transcript))
    if m == 3:
        try:
            roots = _binary_roots(cone)
        except FieldError:
            roots = None
        g4 = _binary(g, 4)
        if roots is None:
            # irreducible cubic cone over Q: three distinct directions
            transcript.append("cubic tangent cone irreducible over Q: three distinct lines")
            return SingularityRecord(p, "D4", 3, cone, (), tuple(transcript))
        mults = sorted(mm for _, mm in roots)
        if mults == [1, 1, 1]:
            transcript.append("three distinct tangent lines: ordinary triple point")
            return SingularityRecord(p, "D4", 3, cone, tuple(d for d, _ in roots),
                                     tuple(transcript))
        double = next(d for d, mm in roots if mm >= 2)
        q4 = sum((g4[i] * double[0] ** (4 - i) * double[1] ** i for i in range(5)), _ZERO)
        if mults == [1, 2]:
            transcript.append("tangent cone: double line plus a simple line")
            kind = "D5" if q4 != 0 else "unsupported"
        else:
            transcript.append("tangent cone: triple line")
            kind = "E6" if q4 != 0 else "unsupported"
        transcript.append(f"quartic part on the repeated direction: {format_scalar(q4)}")
        return SingularityRecord(p, kind, 3, cone, (double,), tuple(transcript))
    transcript.append("point of multiplicity 4")
    return SingularityRecord(p, "unsupported", m, cone, (), tuple(transcript))


# -- locating singular points ----------------------------------------------

def _xpoly(m: MPoly, t0) -> Poly:
    """m(t0, x) for an MPoly in (t, x)."""
    cs = [_ZERO] * (m.degree_in(1) + 1) if not m.is_zero() else []
    for (i, j), c in m.terms.items():
        cs[j] = cs[j] + c * t0 ** i
    return Poly(cs, "x")


def _as_x_over_t(m: MPoly) -> Poly:
    """An MPoly in (t, x) as a polynomial in x with K(t) coefficients."""
    n = m.degree_in(1)
    rows = [[_ZERO] * (m.degree_in(0) + 1) for _ in range(n + 1)]
    for (i, j), c in m.terms.items():
        rows[j][i] = c
    return Poly([RatFunc(Poly(r, "t")) for r in rows], "x")


def _resultant_t(a: MPoly, b: MPoly) -> Poly:
    if a.degree_in(1) <= 0 or b.degree_in(1) <= 0:
        # one of them is free of x; the "resultant" is that polynomial itself
        c = a if a.degree_in(1) <= 0 else b
        return _xpoly_t(c)
    r = poly_resultant(_as_x_over_t(a), _as_x_over_t(b))
    r = r if isinstance(r, RatFunc) else RatFunc(Poly([r], "t"))
    return r.num


def _xpoly_t(m: MPoly) -> Poly:
    cs = [_ZERO] * (m.degree_in(0) + 1)
    for (i, j), c in m.terms.items():
        cs[i] = cs[i] + c
    return Poly(cs, "t")


def _candidate_x(polys: Sequence[Poly]):
    g = Poly((), "x")
    for p in polys:
        g = poly_gcd(g, p) if not g.is_zero() else p.monic()
    return g


def singular_points(F: Quartic) -> tuple[list[tuple], list[SingularityRecord]]:
    """Exact singular points (those representable in the quadratic tower) and
    records for any that are not."""
    f = F.affine
    ft, fx = f.diff(0), f.diff(1)
    found: list[tuple] = []
    unsupported: list[SingularityRecord] = []
    # affine chart Z = 1
    r1 = _resultant_t(f, fx)
    r2 = _resultant_t(fx, ft)
    r3 = _resultant_t(f, ft)
    nonzero = [r for r in (r1, r2, r3) if not r.is_zero()]
    if not nonzero:
        raise NonReducedError("quartic is not reduced (positive-dimensional singular locus)")
    r = nonzero[0]
    for other in nonzero[1:]:
        r = poly_gcd(r, other)
    if r.degree > 0:
        rep = exact_roots(r)
        for t0, _ in rep.exact:
            xs = _candidate_x([_xpoly(f, t0), _xpoly(fx, t0), _xpoly(ft, t0)])
            if xs.is_zero():
                raise NonReducedError("quartic contains a line of singular points")
            if xs.degree <= 0:
                continue
            xr = exact_roots(xs)
            for x0, _ in xr.exact:
                _add_point(F, found, (t0, x0, _ONE))
            if xr.residual:
                unsupported.append(SingularityRecord(
                    None, "unsupported", 0,
                    transcript=("singular point outside the supported field tower",)))
        for fac, _ in rep.residual:
            unsupported.extend(_numeric_singular(F, fac))
    # line Z = 0: points [1, x, 0] and [0, 1, 0]
    hs = [F.form.diff(i) for i in range(3)]
    polys = []
    for h in hs:
        cs = [_ZERO] * 5
        for (i, j, k), c in h.terms.items():
            if k == 0:
                cs[j] = cs[j] + c
        polys.append(Poly(cs, "x"))
    polys.append(Poly([F.coeff(4 - j, j, 0) for j in range(5)], "x"))
    g = _candidate_x([p for p in polys if not p.is_zero()]) if any(
        not p.is_zero() for p in polys) else Poly((), "x")
    if g.is_zero():
        raise NonReducedError("line Z = 0 is a multiple component")
    if g.degree > 0:
        xr = exact_roots(g)
        for x0, _ in xr.exact:
            _add_point(F, found, (_ONE, x0, _ZERO))
        if xr.residual:
            unsupported.append(SingularityRecord(
                None, "unsupported", 0,
                transcript=("singular point at infinity outside the supported field tower",)))
    _add_point(F, found, (_ZERO, _ONE, _ZERO))
    found.sort(key=point_key)
    return found, unsupported


def _add_point(F: Quartic, found: list, p: tuple):
    try:
        if F(p) != 0 or any(c != 0 for c in F.gradient(p)):
            return
    except FieldError:
        return
    p = normalize_point(p)
    if p not in found:
        found.append(p)


def _numeric_singular(F: Quartic, fac: Poly) -> list[SingularityRecord]:
    import mpmath

    out = []
    f = F.affine
    grads = [f, f.diff(0), f.diff(1)]
    cs = [complex(c) for c in reversed(fac.coeffs)]
    for t0 in mpmath.polyroots(cs, maxsteps=200, extraprec=200):
        xs_poly = [complex(c) for c in reversed(_numeric_x(f.diff(1), t0))]
        if len(xs_poly) < 2:
            continue
        for x0 in mpmath.polyroots(xs_poly, maxsteps=200, extraprec=200):
            vals = [abs(_eval_c(g, t0, x0)) for g in grads]
            if max(vals) < 1e-12:
                out.append(SingularityRecord(
                    None, "unsupported", 0, approx=(complex(t0), complex(x0), 1),
                    transcript=("singular point outside the supported field tower",)))
    return out


def _numeric_x(m: MPoly, t0) -> list:
    n = m.degree_in(1)
    cs = [0j] * (n + 1)
    for (i, j), c in m.terms.items():
        cs[j] += complex(c) * complex(t0) ** i
    return cs


def _eval_c(m: MPoly, t0, x0) -> complex:
    return sum(complex(c) * complex(t0) ** i * complex(x0) ** j for (i, j), c in m.terms.items())


def classify_singularities(F: Quartic) -> list[SingularityRecord]:
    pts, unsupported = singular_points(F)
    records = [classify_point(F, p) for p in pts]
    return records + unsupported


def singularity_multiset(records: Sequence[SingularityRecord]) -> tuple[str, ...]:
    return tuple(sorted(r.kind for r in records))
