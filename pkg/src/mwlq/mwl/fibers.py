"""Reducible fibers of the elliptic surface y^2 = f(t, x), the components met
by a section, and the local contribution terms of the height pairing.

Fibers sit over the t-values of the A_n singularities of the quartic (type
I_{n+1}), over the t-value of a D4 point (type I0*) and over t = oo, the
image of the marked point (type I_2).  III and IV fibers share the
intersection matrices of I_2 and I_3 and are treated as those.  Components of
an I_m fiber are numbered 0..m-1 around the cycle, with 0 the identity
component.  For I0*, 1 is the double central component and 2, 3, 4 the outer
ones, matched to the tangent-cone directions of the D4 point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..arith.field import FieldError, format_scalar, scalar_sqrt, sign_key
from ..arith.linalg import inverse
from ..arith.mpoly import MPoly
from ..arith.poly import Poly
from ..arith.ratfunc import as_ratfunc
from ..arith.roots import exact_roots
from ..elliptic import CurvePoint
from ..quartic.forms import Quartic, format_point, normalize_point
from ..quartic.singular import SingularityRecord

_ZERO = Fraction(0)
_ONE = Fraction(1)
INFINITY_BASE = "oo"


class FiberError(ValueError):
    pass


class UnsupportedFiberError(FiberError):
    """Singularity types outside A_n carry no height support."""


class IncidenceError(FiberError):
    pass


def cartan_a(n: int) -> list[list[Fraction]]:
    m = [[_ZERO] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = Fraction(2)
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = Fraction(-1)
    return m


@dataclass(frozen=True)
class FiberRecord:
    """One reducible fiber; ``base`` is a scalar t-value or ``"oo"``."""

    base: object
    kind: str  # "I2", "I3", ...
    m: int
    source: str  # singularity type ("A1", ...) or "z_o"
    point: Optional[tuple] = None  # singular point (t, x) of f = 0 for finite fibers
    multiplicities: tuple = ()
    matrix: tuple = ()  # intersection matrix of the non-identity components
    sigma: object = None  # orientation: the chosen root of the tangent-cone coefficient
    ell: tuple = ()  # tangent-cone linear form (coefficient of u, coefficient of w)

    @property
    def at_infinity(self) -> bool:
        return self.base == INFINITY_BASE

    def to_json(self) -> dict:
        return {
            "base": self.base if self.at_infinity else format_scalar(self.base),
            "kind": self.kind,
            "components": self.m,
            "source": self.source,
            "point": format_point(self.point) if self.point else None,
            "orientation": None if self.sigma is None else format_scalar(self.sigma),
        }


def cartan_d4() -> list[list[Fraction]]:
    """Central node first, then the three outer nodes."""
    m = [[Fraction(2) if i == j else _ZERO for j in range(4)] for i in range(4)]
    for k in (1, 2, 3):
        m[0][k] = m[k][0] = Fraction(-1)
    return m


def i0_star_record(base, point, slopes) -> FiberRecord:
    A = tuple(tuple(-c for c in row) for row in cartan_d4())
    return FiberRecord(base, "I0*", 5, "D4", point, (2, 1, 1, 1), A, None, tuple(slopes))


def _cone_slopes(F: Quartic, t0, x0) -> list:
    """Roots m of the tangent cone g3(1, m) of a triple point of f at (t0, x0)."""
    f = F.affine
    shifted = f.subs([MPoly.var(0, 2) + t0, MPoly.var(1, 2) + x0], 2)
    cubic = shifted.homogeneous_part(3)
    cs = [cubic.terms.get((3 - k, k), _ZERO) for k in range(4)]  # u^(3-k) w^k
    if cs[3] == 0:
        raise UnsupportedFiberError("the fiber line is tangent to a branch of the D4 point")
    roots = [r for r, _ in exact_roots(Poly(cs, "m")).exact]
    return sorted(roots, key=sign_key)


def i_n_record(base, m: int, source: str, point=None, sigma=None, ell=()) -> FiberRecord:
    A = tuple(tuple(-c for c in row) for row in cartan_a(m - 1))
    return FiberRecord(base, f"I{m}", m, source, point, (1,) * (m - 1), A, sigma, tuple(ell))


def _quadratic_part(F: Quartic, t0, x0) -> tuple:
    """Coefficients (a, b, c) of a u^2 + b u w + c w^2 in f(t0 + u, x0 + w)."""
    f = F.affine
    ft = f.diff(0)
    fx = f.diff(1)
    a = ft.diff(0)(t0, x0) / 2
    b = ft.diff(1)(t0, x0)
    c = fx.diff(1)(t0, x0) / 2
    return a, b, c


def _orientation(F: Quartic, t0, x0) -> tuple:
    """(sigma, (l_u, l_w)) with quadratic part = sigma^2 (l_u u + l_w w)^2,
    l normalized to first nonzero coefficient 1 and sigma the canonical root."""
    a, b, c = _quadratic_part(F, t0, x0)
    if a != 0:
        lead, ell = a, (_ONE, b / (2 * a))
    else:
        lead, ell = c, (_ZERO, _ONE)
    sigma = scalar_sqrt(lead)
    if sigma is None:
        raise FieldError("tangent-cone coefficient needs a second quadratic extension")
    return sigma, ell


def fibers_from_singularities(F: Quartic, records: Sequence[SingularityRecord],
                              z_o: Sequence = (_ZERO, _ONE, _ZERO)) -> list[FiberRecord]:
    """Reducible fibers of the surface attached to a normal-form quartic."""
    if normalize_point(z_o) != (_ZERO, _ONE, _ZERO):
        raise FiberError("fibers are computed in normal-form coordinates (z_o = [0:1:0])")
    out = [i_n_record(INFINITY_BASE, 2, "z_o")]
    seen = set()
    for r in records:
        n = r.a_index
        if n is None and r.kind != "D4":
            raise UnsupportedFiberError(
                f"{r.kind} singularity has no height support; use lattice_lookup for the "
                f"catalog entry")
        p = normalize_point(r.point)
        if p[2] == 0:
            raise FiberError("singular point on the tangent line at z_o")
        t0, x0 = p[0], p[1]
        if t0 in seen:
            raise FiberError("two singular points in one fiber")
        seen.add(t0)
        if r.kind == "D4":
            out.append(i0_star_record(t0, (t0, x0), _cone_slopes(F, t0, x0)))
            continue
        sigma, ell = (None, ()) if n == 1 else _orientation(F, t0, x0)
        out.append(i_n_record(t0, n + 1, r.kind, (t0, x0), sigma, ell))
    return out


# -- incidence ---------------------------------------------------------------

@dataclass(frozen=True)
class SectionIncidence:
    """s.O and, per fiber (by index into the fiber list), the component met."""

    s_dot_o: int
    components: tuple  # component index per fiber
    fibers: tuple = field(repr=False, default=())

    def vc(self, i: int) -> list[int]:
        f = self.fibers[i]
        v = [0] * (f.m - 1)
        k = self.components[i]
        if k:
            v[k - 1] = 1
        return v

    @property
    def theta_infinity(self) -> int:
        for f, k in zip(self.fibers, self.components):
            if f.at_infinity:
                return 1 if k else 0
        return 0

    def to_json(self) -> dict:
        return {"s.O": self.s_dot_o,
                "components": [{"base": f.to_json()["base"], "kind": f.kind, "component": k}
                               for f, k in zip(self.fibers, self.components)]}


def section_dot_zero(P: CurvePoint) -> int:
    """Intersection number of the section with the zero section O."""
    if P.is_infinity:
        raise IncidenceError("the zero section has no self-incidence here")
    x = P.x
    finite = x.den.degree
    at_inf = max(0, -x.ord_at_infinity() - 2)
    total = finite + at_inf
    if total % 2:
        raise IncidenceError("pole orders of x must be even on E")
    return int(total) // 2


def _component(f: FiberRecord, P: CurvePoint) -> int:
    if f.at_infinity:
        # chart s = 1/t: x' = s^2 x, y' = s^3 y; the node of the fiber is (0, 0)
        return 1 if P.x.ord_at_infinity() >= -1 and P.y.ord_at_infinity() >= -2 else 0
    t0, x0 = f.point
    if P.x.has_pole_at(t0):
        return 0
    if P.x(t0) != x0 or P.y(t0) != 0:
        return 0
    if f.kind == "I0*":
        slope = ((P.x - x0) / as_ratfunc(Poly([-t0, _ONE], "t")))(t0)
        if slope not in f.ell:
            raise IncidenceError("section leaves the D4 point off every tangent direction")
        return 2 + f.ell.index(slope)
    if f.m == 2:
        return 1
    u = as_ratfunc(Poly([-t0, _ONE], "t"))
    lin = u * f.ell[0] + (P.x - x0) * f.ell[1]
    k1 = (P.y - lin * f.sigma).ord_at(t0)
    k2 = (P.y + lin * f.sigma).ord_at(t0)
    if min(k1, k2) == 1:
        return 1 if k1 == 1 else f.m - 1
    if f.m == 4:
        return 2
    raise IncidenceError(f"component of {f.kind} beyond the linear branch test")


def incidence(P: CurvePoint, fibers: Sequence[FiberRecord]) -> SectionIncidence:
    if P.is_infinity:
        raise IncidenceError("incidence of the zero section is not defined here")
    comps = tuple(_component(f, P) for f in fibers)
    return SectionIncidence(section_dot_zero(P), comps, tuple(fibers))


# -- contributions ------------------------------------------------------------

def contribution_matrix(f: FiberRecord) -> list[list[Fraction]]:
    """(-A_v)^-1 for the fiber."""
    return inverse([[-c for c in row] for row in f.matrix])


def contribution(f: FiberRecord, vc1: Sequence[int], vc2: Sequence[int]) -> Fraction:
    """vc1^T (-A_v)^-1 vc2 over the non-identity components."""
    n = f.m - 1
    if len(vc1) != n or len(vc2) != n or any(c not in (0, 1) for c in (*vc1, *vc2)) \
            or sum(vc1) > 1 or sum(vc2) > 1:
        raise FiberError("contact vectors must be 0/1 selectors of length m-1")
    inv = contribution_matrix(f)
    return sum((vc1[i] * inv[i][j] * vc2[j] for i in range(n) for j in range(n)), _ZERO)


def contribution_closed_form(m: int, k: int, l: int) -> Fraction:
    """The I_m value k (m - l) / m for components 1 <= k <= l."""
    if k == 0 or l == 0:
        return _ZERO
    k, l = min(k, l), max(k, l)
    return Fraction(k * (m - l), m)
