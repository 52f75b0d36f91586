"""Plane quartic forms F(T, X, Z), projective lines, and the normal form

    F = X^3 Z + A2(T,Z) X^2 + A3(T,Z) X + A4(T,Z)

obtained by moving a marked point z_o to [0,1,0], a residual tangency point p
to [1,0,0] and a further point q to [0,0,1]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import sympy

from ..arith.field import FieldError, Quad, format_scalar, sign_key, to_scalar
from ..arith.linalg import det, inverse, matvec
from ..arith.mpoly import MPoly
from ..arith.poly import Poly
from ..arith.roots import exact_roots

T_, X_, Z_ = 0, 1, 2
_ZERO = Fraction(0)
_ONE = Fraction(1)


class QuarticError(ValueError):
    pass


class NormalizationError(QuarticError):
    pass


def normalize_point(p: Sequence) -> tuple:
    """Scale a projective point so that its last nonzero coordinate is 1."""
    p = [to_scalar(c) if not isinstance(c, Quad) else c for c in p]
    for c in reversed(p):
        if c != 0:
            return tuple(x / c for x in p)
    raise QuarticError("the zero vector is not a projective point")


def point_key(p: Sequence) -> tuple:
    return tuple(sign_key(c) for c in normalize_point(p))


def format_point(p: Sequence) -> list[str]:
    return [format_scalar(c) for c in normalize_point(p)]


@dataclass(frozen=True)
class Quartic:
    form: MPoly

    def __post_init__(self):
        if self.form.nvars != 3:
            raise QuarticError("a plane quartic needs three variables")
        if self.form.is_zero():
            raise QuarticError("zero form")
        if any(sum(e) != 4 for e in self.form.terms):
            raise QuarticError("form is not homogeneous of degree 4")

    # -- construction and serialization -----------------------------------
    @classmethod
    def from_coefficients(cls, coeffs: dict) -> "Quartic":
        terms = {}
        for key, val in coeffs.items():
            if isinstance(key, str):
                if len(key) != 3 or not key.isdigit():
                    raise QuarticError(f"bad monomial key {key!r}")
                e = tuple(int(ch) for ch in key)
            else:
                e = tuple(key)
            terms[e] = to_scalar(val) if not isinstance(val, Quad) else val
        return cls(MPoly(terms, 3))

    def coefficients_json(self) -> dict:
        return {f"{e[0]}{e[1]}{e[2]}": format_scalar(c)
                for e, c in sorted(self.form.terms.items(), reverse=True)}

    def coeff(self, i: int, j: int, k: int):
        return self.form.coeff((i, j, k))

    def __call__(self, p: Sequence):
        return self.form(*p)

    def gradient(self, p: Sequence) -> list:
        return [self.form.diff(i)(*p) for i in range(3)]

    def field_ext(self) -> int:
        return self.form.field_ext()

    def scaled(self, c) -> "Quartic":
        return Quartic(self.form * c)

    # -- affine data in the chart Z = 1 -----------------------------------
    @cached_property
    def affine(self) -> MPoly:
        """f(t, x) = F(t, x, 1) as an MPoly in (t, x)."""
        out = {}
        for (i, j, k), c in self.form.terms.items():
            out[(i, j)] = out.get((i, j), _ZERO) + c
        return MPoly(out, 2)

    def x_coefficients(self) -> list[Poly]:
        """[A4(t,1), A3(t,1), A2(t,1), A1(t,1), A0(t,1)] as polynomials in t."""
        cs = [[_ZERO] * 5 for _ in range(5)]
        for (i, j, k), c in self.form.terms.items():
            cs[j][i] = c
        return [Poly(row, "t") for row in cs]

    @cached_property
    def normal_form(self) -> bool:
        xs = self.x_coefficients()
        if not xs[4].is_zero() or xs[3] != Poly([_ONE], "t"):
            return False
        # X^3 Z only: the X^3 T coefficient must vanish as well
        if self.coeff(1, 3, 0) != 0 or self.coeff(0, 3, 1) != 1:
            return False
        return xs[2].degree == 2 and xs[1].degree == 3 and xs[0].degree <= 3

    def weierstrass_coefficients(self) -> tuple[Poly, Poly, Poly]:
        if not self.normal_form:
            raise QuarticError("quartic is not in normal form")
        xs = self.x_coefficients()
        return xs[2], xs[1], xs[0]

    # -- global properties ---------------------------------------------------
    @cached_property
    def factorization(self) -> list[tuple[MPoly, int]]:
        """Irreducible factors over the coefficient field (via sympy)."""
        T, X, Z = sympy.symbols("T X Z")
        expr = _to_sympy_expr(self.form, (T, X, Z))
        d = self.field_ext()
        if d:
            _, facs = sympy.factor_list(expr, T, X, Z, extension=sympy.sqrt(d))
        else:
            _, facs = sympy.factor_list(expr, T, X, Z)
        out = []
        for f, e in facs:
            out.append((_from_sympy_expr(f, (T, X, Z), d), int(e)))
        return out

    @property
    def reduced(self) -> bool:
        return all(e == 1 for _, e in self.factorization)

    @property
    def component_type(self) -> str:
        """'irreducible', 'two-conics' or a description of other splittings."""
        degs = sorted(f.total_degree() for f, e in self.factorization for _ in range(e))
        if degs == [4]:
            return "irreducible"
        if degs == [2, 2]:
            return "two-conics"
        return "components:" + "+".join(map(str, degs))

    def to_json(self) -> dict:
        return {"coefficients": self.coefficients_json()}


def _to_sympy_expr(m: MPoly, syms):
    expr = 0
    for e, c in m.terms.items():
        term = _scalar_to_sympy(c)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return sympy.expand(expr)


def _scalar_to_sympy(c):
    if isinstance(c, Quad):
        return (sympy.Rational(c.a.numerator, c.a.denominator)
                + sympy.Rational(c.b.numerator, c.b.denominator) * sympy.sqrt(c.d))
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def _sympy_to_scalar(v, d: int):
    v = sympy.nsimplify(v) if not v.is_Rational else v
    if v.is_Rational:
        return Fraction(int(v.p), int(v.q))
    a, b = _split_sqrt(sympy.expand(v), d)
    return Quad.make(a, b, d)


def _split_sqrt(v, d):
    r = sympy.sqrt(d)
    b = sympy.expand(v).coeff(r)
    a = sympy.expand(v - b * r)
    if not (a.is_Rational and b.is_Rational):
        raise FieldError(f"coefficient {v} is outside Q(sqrt {d})")
    return Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))


def _from_sympy_expr(expr, syms, d: int) -> MPoly:
    p = sympy.Poly(expr, *syms)
    terms = {tuple(int(k) for k in mon): _sympy_to_scalar(c, d)
             for mon, c in p.terms()}
    return MPoly(terms, len(syms))


# -- lines -----------------------------------------------------------------

@dataclass(frozen=True)
class ProjLine:
    """The line lT*T + lX*X + lZ*Z = 0."""

    coeffs: tuple

    @staticmethod
    def from_affine(alpha, beta) -> "ProjLine":
        """x = alpha t + beta, i.e. alpha T - X + beta Z = 0."""
        return ProjLine((to_scalar_any(alpha), Fraction(-1), to_scalar_any(beta)))

    @property
    def through_marked_point(self) -> bool:
        """True iff the line passes through z_o = [0, 1, 0]."""
        return self.coeffs[1] == 0

    def affine(self) -> tuple:
        """(alpha, beta) with the line equal to x = alpha t + beta."""
        lT, lX, lZ = self.coeffs
        if lX == 0:
            raise QuarticError("line passes through z_o = [0,1,0]")
        return (-lT / lX, -lZ / lX)

    def contains(self, p: Sequence) -> bool:
        return sum((a * b for a, b in zip(self.coeffs, p)), _ZERO) == 0

    def canonical(self) -> "ProjLine":
        return ProjLine(normalize_point(self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, ProjLine):
            return NotImplemented
        return normalize_point(self.coeffs) == normalize_point(other.coeffs)

    def __hash__(self):
        return hash(normalize_point(self.coeffs))

    def sort_key(self):
        if self.coeffs[1] != 0:
            a, b = self.affine()
            return (0, sign_key(a), sign_key(b))
        return (1,) + point_key(self.coeffs)

    def to_json(self) -> dict:
        out = {"coefficients": [format_scalar(c) for c in self.canonical().coeffs]}
        if not self.through_marked_point:
            a, b = self.affine()
            out["alpha"] = format_scalar(a)
            out["beta"] = format_scalar(b)
        return out

    def points(self) -> tuple:
        """Two distinct points spanning the line."""
        l = self.coeffs
        basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        cands = []
        for i in range(3):
            for j in range(i + 1, 3):
                # point with support on coordinates i, j lying on the line
                v = [_ZERO] * 3
                v[i], v[j] = l[j], -l[i]
                if any(c != 0 for c in v):
                    cands.append(tuple(v))
        out = []
        for c in cands:
            if not out or _independent(out[0], c):
                out.append(c)
            if len(out) == 2:
                return tuple(out)
        del basis
        raise QuarticError("degenerate line")


def _independent(p, q) -> bool:
    return any(p[i] * q[j] - p[j] * q[i] != 0 for i in range(3) for j in range(i + 1, 3))


def to_scalar_any(x):
    return x if isinstance(x, Quad) else to_scalar(x)


def restrict_to_line(F: Quartic, L: ProjLine) -> Poly:
    """F(t, alpha t + beta, 1) for a line x = alpha t + beta."""
    if L.through_marked_point:
        raise QuarticError("line passes through z_o; no affine form")
    a, b = L.affine()
    out = Poly((), "t")
    line = Poly([b, a], "t")
    tp = Poly.gen("t")
    cache = {}
    for (i, j, k), c in F.form.terms.items():
        key = j
        if key not in cache:
            cache[key] = line ** j
        out = out + (tp ** i) * cache[key] * c
    if out.is_zero():
        raise QuarticError("L is a component of the quartic")
    return out


def restrict_binary(F: Quartic, p: Sequence, q: Sequence) -> MPoly:
    """The binary quartic (u, v) -> F(u p + v q)."""
    u, v = MPoly.gens(2)
    return F.form.subs([u * p[i] + v * q[i] for i in range(3)], 2)


# -- normal form -----------------------------------------------------------

@dataclass(frozen=True)
class Normalization:
    source: Quartic
    quartic: Quartic
    matrix: tuple  # old = matrix * new (projectively)
    kappa: object  # F_new(v) = F_old(matrix v) / kappa
    z_o: tuple
    p: tuple
    q: tuple
    twist: object = _ONE

    @cached_property
    def inverse(self):
        return inverse([list(r) for r in self.matrix])

    def to_new(self, point: Sequence) -> tuple:
        return normalize_point(matvec(self.inverse, list(point)))

    def to_old(self, point: Sequence) -> tuple:
        return normalize_point(matvec([list(r) for r in self.matrix], list(point)))

    def line_to_old(self, L: ProjLine) -> ProjLine:
        # l_new . v = 0 with v = M^-1 old  =>  l_old = l_new M^-1
        inv = self.inverse
        return ProjLine(tuple(sum((L.coeffs[i] * inv[i][j] for i in range(3)), _ZERO)
                              for j in range(3)))

    def with_twist(self, s) -> "Normalization":
        """Rescale Z -> s Z (and divide by s); multiplies every line restriction
        by 1/s, which changes the square class of line lifts."""
        s = to_scalar_any(s)
        m = [list(r) for r in self.matrix]
        m2 = tuple(tuple(m[i][j] * (s if j == 2 else 1) for j in range(3)) for i in range(3))
        newq = transform_quartic(self.source, m2, self.kappa * self.twist * s)
        return Normalization(self.source, newq, m2, self.kappa, self.z_o, self.p, self.q,
                             self.twist * s)

    def to_json(self) -> dict:
        return {
            "matrix": [[format_scalar(c) for c in row] for row in self.matrix],
            "kappa": format_scalar(self.kappa),
            "twist": format_scalar(self.twist),
            "z_o": format_point(self.z_o),
            "p": format_point(self.p),
            "q": format_point(self.q),
        }


def transform_quartic(F: Quartic, M: Sequence[Sequence], scale) -> Quartic:
    T, X, Z = MPoly.gens(3)
    v = (T, X, Z)
    subs = [sum((v[j] * M[i][j] for j in range(3)), MPoly({}, 3)) for i in range(3)]
    return Quartic(F.form.subs(subs, 3) / scale)


def _tangent_data(F: Quartic, z_o: Sequence):
    g = F.gradient(z_o)
    if all(c == 0 for c in g):
        raise NormalizationError("marked point is singular")
    tangent = ProjLine(tuple(g))
    w = next(p for p in tangent.points() if _independent(p, z_o))
    B = restrict_binary(F, z_o, w)  # in (u, v): point u z_o + v w
    # z_o is v = 0; its order is the v-adic valuation
    vals = [B.coeff((4 - k, k)) for k in range(5)]  # coefficient of u^(4-k) v^k
    if all(c == 0 for c in vals):
        raise NormalizationError("tangent line at the marked point is a component")
    order = next(k for k, c in enumerate(vals) if c != 0)
    return tangent, w, vals, order


def residual_tangent_points(F: Quartic, z_o: Sequence) -> tuple[tuple, list]:
    """Tangent line at z_o and the roots of the residual quadratic, in the
    parametrization u z_o + w; raises if z_o is not a general point."""
    if F(z_o) != 0:
        raise NormalizationError("marked point does not lie on the quartic")
    tangent, w, vals, order = _tangent_data(F, z_o)
    if order > 2:
        raise NormalizationError("tangency degenerate: marked point is a flex")
    # residual quadratic in u (v = 1): vals[2] u^2 + vals[3] u + vals[4]
    quad = Poly([vals[4], vals[3], vals[2]], "u")
    disc = vals[3] ** 2 - 4 * vals[2] * vals[4]
    if disc == 0:
        raise NormalizationError("tangency degenerate: tangent line is a bitangent")
    roots = [r for r, _ in exact_roots(quad).exact]
    pts = []
    for r in roots:
        pts.append(normalize_point([r * z_o[i] + w[i] for i in range(3)]))
    return tangent, pts


def _is_singular(F: Quartic, p) -> bool:
    return all(c == 0 for c in F.gradient(p))


def search_off_tangent_point(F: Quartic, z_o: Sequence, tangent: ProjLine,
                             budget: int = 400) -> Optional[tuple]:
    """A rational point of F off the tangent line at z_o, found on lines
    through z_o with small integer directions."""
    span = 1
    tried = 0
    while tried < budget:
        for a in range(-span, span + 1):
            for b in range(-span, span + 1):
                for c in range(-span, span + 1):
                    if max(abs(a), abs(b), abs(c)) != span:
                        continue
                    r = (Fraction(a), Fraction(b), Fraction(c))
                    if not _independent(r, z_o) or tangent.contains(r):
                        continue
                    tried += 1
                    B = restrict_binary(F, r, z_o)  # u r + v z_o
                    # v = 1: roots u != 0 give points u r + z_o
                    cubic = Poly([B.coeff((k, 4 - k)) for k in range(5)], "u")
                    if cubic.is_zero():
                        continue
                    for root, _ in exact_roots(cubic).exact:
                        if root == 0 or isinstance(root, Quad):
                            continue
                        pt = normalize_point([root * r[i] + z_o[i] for i in range(3)])
                        if not tangent.contains(pt) and not _is_singular(F, pt):
                            return pt
        span += 1
    return None


def normalize_quartic(F: Quartic, z_o: Sequence, p: Optional[Sequence] = None,
                      q: Optional[Sequence] = None, twist=None,
                      field_ext: int = 0) -> Normalization:
    """Move z_o to [0,1,0], p to [1,0,0] and q to [0,0,1]; divide by the X^3 Z
    coefficient so that F takes the normal form."""
    z_o = normalize_point(z_o)
    tangent, residual = residual_tangent_points(F, z_o)
    for pt in residual:
        if _is_singular(F, pt):
            raise NormalizationError(
                "tangency degenerate: tangent line at z_o passes through a singular point")
    if p is None:
        ok = [pt for pt in residual
              if all(not isinstance(c, Quad) or c.d == field_ext for c in pt)]
        if not ok:
            raise NormalizationError(
                "no residual tangency point in the permitted field; pass --field-ext")
        ok.sort(key=lambda pt: (any(isinstance(c, Quad) for c in pt), point_key(pt)))
        p = ok[0]
    else:
        p = normalize_point(p)
        if F(p) != 0 or not tangent.contains(p) or not _independent(p, z_o):
            raise NormalizationError("p must be a point of Q on the tangent line, p != z_o")
    if q is None:
        q = search_off_tangent_point(F, z_o, tangent)
        if q is None:
            raise NormalizationError("no rational point q off the tangent line found")
    else:
        q = normalize_point(q)
        if F(q) != 0 or tangent.contains(q):
            raise NormalizationError("q must lie on Q and off the tangent line at z_o")
    M = tuple(tuple((p[i], z_o[i], q[i])[j] for j in range(3)) for i in range(3))
    if det([list(r) for r in M]) == 0:
        raise NormalizationError("z_o, p, q are collinear")
    G = transform_quartic(F, M, _ONE)
    kappa = G.coeff(0, 3, 1)
    if kappa == 0:
        raise NormalizationError("internal error: X^3 Z coefficient vanished")
    norm = Normalization(F, Quartic(G.form / kappa), M, kappa, z_o, p, q, _ONE)
    if twist is not None and twist != 1:
        norm = norm.with_twist(twist)
    if not norm.quartic.normal_form:
        raise NormalizationError("normal form degree conditions failed")
    return norm


def identity_normalization(F: Quartic) -> Normalization:
    if not F.normal_form:
        raise NormalizationError("quartic is not in normal form")
    I = tuple(tuple(_ONE if i == j else _ZERO for j in range(3)) for i in range(3))
    return Normalization(F, F, I, _ONE, (_ZERO, _ONE, _ZERO), (_ONE, _ZERO, _ZERO),
                         (_ZERO, _ZERO, _ONE), _ONE)
