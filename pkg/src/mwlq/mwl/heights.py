"""Height pairing on E(K(t)) for the rational elliptic surface of a quartic
with A_n and D4 singularities, and the classification of sections by height.

<P, Q> = chi - P.Q + P.O + Q.O - sum_v contr_v(P, Q), with chi = 1.
Off-diagonal pairings are computed by polarization of the self-heights, which
needs no intersection number; P.Q is then derived and must be a non-negative
integer.  A direct count of common points is available as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..arith.field import format_scalar
from ..arith.poly import Poly, poly_gcd
from ..elliptic import CurvePoint, FunctionFieldCurve, point_add
from ..quartic.bitangent import ContactDivisor, line_to_sections
from ..quartic.forms import ProjLine, Quartic, normalize_point, restrict_to_line
from .fibers import (FiberRecord, IncidenceError, SectionIncidence,
                     contribution, incidence)

CHI = 1  # chi(O_S) of a rational elliptic surface
_ZERO = Fraction(0)
_ONE = Fraction(1)


class HeightError(ValueError):
    pass


def total_contribution(fibers: Sequence[FiberRecord], inc1: SectionIncidence,
                       inc2: SectionIncidence) -> Fraction:
    return sum((contribution(f, inc1.vc(i), inc2.vc(i)) for i, f in enumerate(fibers)), _ZERO)


def height_pairing(chi: int, inc1: SectionIncidence, inc2: SectionIncidence,
                   s1_dot_s2: int, fibers: Sequence[FiberRecord]) -> Fraction:
    """chi - s1.s2 + s1.O + s2.O - sum_v contr_v(s1, s2)."""
    if inc1 is None or inc2 is None:
        raise HeightError("missing incidence data")
    if len(inc1.components) != len(fibers) or len(inc2.components) != len(fibers):
        raise HeightError("incidence data does not match the fiber list")
    return (chi - s1_dot_s2 + inc1.s_dot_o + inc2.s_dot_o
            - total_contribution(fibers, inc1, inc2))


def self_height(inc: SectionIncidence, fibers: Sequence[FiberRecord]) -> Fraction:
    # s.s = -chi on a rational elliptic surface
    return height_pairing(CHI, inc, inc, -CHI, fibers)


@dataclass(frozen=True)
class HeightClass:
    kind: str  # "bitangent", "weak-bitangent", "ambiguous", "unclassified"
    through: tuple = ()  # singularity types on the line, e.g. ("A2", "A1")

    @property
    def n(self) -> Optional[int]:
        """n for a line through a single A_n."""
        if len(self.through) == 1 and self.through[0].startswith("A"):
            return int(self.through[0][1:])
        return None

    def __str__(self):
        if self.kind == "weak-bitangent":
            return "weak-bitangent through " + "+".join(self.through)
        return self.kind


def local_drop(kind: str) -> Fraction:
    """Height lost by a line-section through a singular point: the self
    contribution n/(n+1) of an outer component of I_{n+1}, 1 for I0*."""
    if kind.startswith("A"):
        n = int(kind[1:])
        return Fraction(n, n + 1)
    if kind == "D4":
        return Fraction(1)
    raise HeightError(f"no height support for {kind}")


_DEFAULT_TYPES = tuple(f"A{n}" for n in range(1, 8)) + ("D4",)


def classify_section_by_height(h, theta_inf: int,
                               available: Optional[Sequence[str]] = None) -> HeightClass:
    """Invert the height of a section with s.O = 0 meeting Theta_{oo,1}:
    3/2 for bitangents and 4-fold tangents, 3/2 minus the local drops of the
    (at most two) singular points on the line otherwise.  ``available`` is
    the singularity multiset of the quartic; without it every A_n (n <= 7) and
    D4 is a candidate, each usable twice."""
    h = Fraction(h)
    if theta_inf != 1:
        return HeightClass("unclassified")
    d = Fraction(3, 2) - h
    if d == 0:
        return HeightClass("bitangent")
    pool = list(available) if available is not None else list(_DEFAULT_TYPES) * 2
    kinds = sorted(set(pool), key=lambda k: (k[0], int(k[1:])))
    found = set()
    for k in kinds:
        if local_drop(k) == d:
            found.add((k,))
    for i, k1 in enumerate(kinds):
        for k2 in kinds[i:]:
            if k1 == k2 and pool.count(k1) < 2:
                continue
            if local_drop(k1) + local_drop(k2) == d:
                found.add(tuple(sorted((k1, k2), key=lambda k: (k[0], -int(k[1:])))))
    if len(found) == 1:
        return HeightClass("weak-bitangent", found.pop())
    if found:
        return HeightClass("ambiguous", tuple(sorted("+".join(f) for f in found)))
    return HeightClass("unclassified")


def theta_parity(coeffs: Sequence[int], thetas: Sequence[int]) -> int:
    """Parity of sum c_i theta_i: whether sum c_i P_i meets Theta_{oo,1}."""
    if len(coeffs) != len(thetas):
        raise ValueError("coefficient and theta sequences differ in length")
    return sum(c * t for c, t in zip(coeffs, thetas)) % 2


def gram_matrix(pairing, sections: Sequence) -> list[list[Fraction]]:
    """Symmetric matrix of pairing(s_i, s_j)."""
    n = len(sections)
    g = [[_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = Fraction(pairing(sections[i], sections[j]))
    return g


def format_matrix(m: Sequence[Sequence]) -> list[list[str]]:
    return [[format_scalar(c) for c in row] for row in m]


class SurfaceModel:
    """Heights on the surface of a normal-form quartic with given fibers."""

    def __init__(self, E: FunctionFieldCurve, fibers: Sequence[FiberRecord]):
        self.E = E
        self.fibers = tuple(fibers)

    def incidence(self, P: CurvePoint) -> SectionIncidence:
        return incidence(P, self.fibers)

    def height(self, P: CurvePoint) -> Fraction:
        if P.is_infinity:
            return _ZERO
        return self_height(self.incidence(P), self.fibers)

    def pairing(self, P: CurvePoint, Q: CurvePoint) -> Fraction:
        if P == Q:
            return self.height(P)
        S = point_add(self.E, P, Q)
        return (self.height(S) - self.height(P) - self.height(Q)) / 2

    def intersection(self, P: CurvePoint, Q: CurvePoint) -> int:
        """P.Q for distinct sections, from the height formula."""
        if P == Q:
            return -CHI
        if P.is_infinity or Q.is_infinity:
            R = Q if P.is_infinity else P
            return 0 if R.is_infinity else self.incidence(R).s_dot_o
        i1, i2 = self.incidence(P), self.incidence(Q)
        v = (CHI + i1.s_dot_o + i2.s_dot_o - total_contribution(self.fibers, i1, i2)
             - self.pairing(P, Q))
        if v.denominator != 1 or v < 0:
            raise HeightError(f"derived intersection number {v} is not a non-negative integer")
        return int(v)

    def direct_intersection(self, P: CurvePoint, Q: CurvePoint) -> Optional[int]:
        """Common points of two polynomial sections on the Weierstrass model,
        skipping fibers where both pass through the surface singularity (there
        the count on the resolved surface is not local to the model).  A lower
        bound for P.Q; None for sections meeting O."""
        if not (P.is_polynomial() and Q.is_polynomial()) or P == Q:
            return None
        i1, i2 = self.incidence(P), self.incidence(Q)
        if i1.s_dot_o or i2.s_dot_o:
            return None
        shared = [f for f, a, b in zip(self.fibers, i1.components, i2.components) if a and b]
        dx = (P.x - Q.x).num
        dy = (P.y - Q.y).num
        if dx.is_zero():
            g = dy
        elif dy.is_zero():
            g = dx
        else:
            g = _gcd_with_multiplicity(dx, dy)
        for f in shared:
            if not f.at_infinity:
                while g.degree > 0 and g(f.point[0]) == 0:
                    g = g // Poly([-f.point[0], 1], "t")
        finite = max(g.degree, 0)
        if any(f.at_infinity for f in shared):
            return int(finite)
        # at oo: x' = s^2 x, y' = s^3 y in s = 1/t
        ox = _order_at_inf(P.x - Q.x, 2)
        oy = _order_at_inf(P.y - Q.y, 3)
        return int(finite + max(0, min(ox, oy)))

    def gram(self, sections: Sequence[CurvePoint]) -> list[list[Fraction]]:
        return gram_matrix(self.pairing, sections)


def _gcd_with_multiplicity(a, b):
    """Product over common roots r of (t - r)^min(ord_r a, ord_r b)."""
    out = a.one()
    g = poly_gcd(a, b)
    while g.degree > 0:
        out = out * g
        a = a // g
        b = b // g
        g = poly_gcd(a, b)
    return out


def _order_at_inf(r, k: int):
    if r.is_zero():
        return float("inf")
    return k - r.num.degree


def incidence_of_line_section(E: FunctionFieldCurve, F: Quartic, L: ProjLine,
                              contact: ContactDivisor, fibers: Sequence[FiberRecord],
                              sign: int = 1) -> SectionIncidence:
    """Incidence of the lift of a weak-bitangent, checked against geometry:
    s.O = 0, Theta_{oo,1} is met, and exactly the fibers of singular points
    on L see a non-identity component."""
    if L.through_marked_point:
        raise IncidenceError("line passes through z_o")
    Pp, Pm = line_to_sections(E, F, L)
    P = Pp if sign > 0 else Pm
    inc = incidence(P, fibers)
    if inc.s_dot_o != 0 or inc.theta_infinity != 1:
        raise IncidenceError("line-section does not meet Theta_{oo,1} off O")
    sing_on_line = {normalize_point(c.point) for c in contact.singular_contacts()}
    for f, k in zip(fibers, inc.components):
        if f.at_infinity:
            continue
        on_line = normalize_point((f.point[0], f.point[1], 1)) in sing_on_line \
            or L.contains((f.point[0], f.point[1], 1))
        if bool(k) != on_line:
            raise IncidenceError("contact data inconsistent with singularity records")
    return inc


def line_self_height(fibers: Sequence[FiberRecord], F: Quartic, L: ProjLine) -> Fraction:
    """Self-height of a lift of the weak-bitangent L computed from
    eta^2 = f(t, xi) alone, so it needs no square root of the restriction.

    Both lifts have the same height.  At an I_m fiber with m >= 3 the branch
    orders k1, k2 of eta -+ sigma*l satisfy k1 + k2 = ord(eta^2 - sigma^2 l^2)
    and min(k1, k2) <= ord(l), which fixes the component up to k <-> m - k,
    and the self contribution k(m - k)/m is symmetric under that swap."""
    if L.through_marked_point:
        raise HeightError("line passes through z_o")
    q = restrict_to_line(F, L)
    a, b = L.affine()
    xi = Poly([b, a], "t")
    total = _ZERO
    for f in fibers:
        if f.at_infinity:
            total += Fraction(1, 2)  # deg xi <= 1 and deg q <= 4: Theta_{oo,1}
            continue
        t0, x0 = f.point
        if xi(t0) != x0 or q(t0) != 0:
            continue
        if f.kind == "I0*":
            total += 1
            continue
        m = f.m
        if m == 2:
            total += Fraction(1, 2)
            continue
        u = Poly([-t0, _ONE], "t")
        ell = u * f.ell[0] + (xi - x0) * f.ell[1]
        sigma2 = f.sigma * f.sigma
        if ell.is_zero():
            k = _order_at(q, t0) // 2
        else:
            k_sum = _order_at(q - ell * ell * sigma2, t0)
            e = _order_at(ell, t0)
            k = min(e, k_sum - e) if k_sum >= 2 * e else k_sum // 2
        if k == 1:
            total += Fraction(m - 1, m)
        elif k == 2 and m == 4:
            total += 1
        else:
            raise HeightError(f"component of {f.kind} beyond the linear branch test")
    return 2 * CHI - total


def _order_at(p: Poly, t0) -> float:
    if p.is_zero():
        return float("inf")
    n = 0
    lin = Poly([-t0, _ONE], "t")
    while p(t0) == 0:
        p = p // lin
        n += 1
    return n
