"""Dense univariate polynomials over an exact coefficient domain.

Coefficients are stored lowest degree first.  The coefficient domain is
anything supporting exact field arithmetic and comparison with 0: Fraction,
Quad, or RatFunc (which gives polynomials in x over K(t)).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .field import Quad, scalar_sqrt

DEG_ZERO = float("-inf")
"""Degree of the zero polynomial."""

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _norm_coeff(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


class Poly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = [_norm_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c, var: str = "t") -> "Poly":
        return cls([c], var)

    @classmethod
    def gen(cls, var: str = "t") -> "Poly":
        return cls([_ZERO, _ONE], var)

    @classmethod
    def monomial(cls, c, n: int, var: str = "t") -> "Poly":
        return cls([_ZERO] * n + [c], var)

    # -- basic data -----------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            return _ZERO
        return self.coeffs[-1]

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return _ZERO

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self):
        return self.coeff(0)

    def zero(self) -> "Poly":
        return Poly((), self.var)

    def one(self) -> "Poly":
        return Poly([_ONE], self.var)

    def _check(self, other: "Poly"):
        if other.var != self.var:
            raise ValueError(
                f"polynomials in different indeterminates: {self.var}, {other.var}")

    def _lift(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Quad)) or self._coeff_ok(other):
            return Poly([other], self.var)
        return None

    def _coeff_ok(self, other) -> bool:
        # K(t)-valued coefficients only make sense for polynomials in x
        return self.var != "t" and _is_coeff(other)

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

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
        if isinstance(other, Poly):
            self._check(other)
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly((), self.var)
            out = [_ZERO] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x == 0:
                    continue
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return Poly(out, self.var)
        if isinstance(other, (int, Fraction, Quad)) or self._coeff_ok(other):
            return Poly([c * other for c in self.coeffs], self.var)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Quad)) or self._coeff_ok(other):
            return Poly([other * c for c in self.coeffs], self.var)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        # division by a scalar only; polynomial division goes through divmod
        if isinstance(other, Poly):
            q, r = poly_divrem(self, other)
            if not r.is_zero():
                raise ArithmeticError("inexact polynomial division")
            return q
        return Poly([c / other for c in self.coeffs], self.var)

    def __floordiv__(self, other):
        return poly_divrem(self, self._lift(other))[0]

    def __mod__(self, other):
        return poly_divrem(self, self._lift(other))[1]

    def __divmod__(self, other):
        return poly_divrem(self, self._lift(other))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Quad)) or self._coeff_ok(other):
            if not self.coeffs:
                return other == 0
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeff(0))
        return hash((self.var, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- evaluation and calculus ------------------------------------------------
    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly([c / lc for c in self.coeffs], self.var)

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, a) -> "Poly":
        """p(var + a)."""
        return self.compose(Poly([a, _ONE], self.var))

    def map_coeffs(self, fn, var: Optional[str] = None) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], var or self.var)

    def reverse(self, n: Optional[int] = None) -> "Poly":
        """var^n * p(1/var) (n defaults to the degree)."""
        if n is None:
            n = len(self.coeffs) - 1
        cs = list(self.coeffs) + [_ZERO] * max(0, n + 1 - len(self.coeffs))
        if len(cs) > n + 1:
            raise ValueError("reverse length smaller than degree")
        return Poly(list(reversed(cs[: n + 1])), self.var)

    def valuation(self) -> float:
        """Order of vanishing at var = 0."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return float("inf")

    def field_ext(self) -> int:
        for c in self.coeffs:
            d = _coeff_ext(c)
            if d:
                return d
        return 0

    def is_rational(self) -> bool:
        return self.field_ext() == 0

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            cs = str(c)
            if mon and c == 1:
                terms.append(mon)
            elif mon:
                terms.append(f"({cs})*{mon}")
            else:
                terms.append(f"({cs})")
        return " + ".join(reversed(terms))


def _is_coeff(x) -> bool:
    # RatFunc and friends register themselves through this hook
    return getattr(x, "_is_coeff", False)


def _coeff_ext(c) -> int:
    if isinstance(c, Quad):
        return c.d
    fe = getattr(c, "field_ext", None)
    return fe() if fe else 0


# -- division, gcd, resultants --------------------------------------------------

def poly_divrem(n: Poly, d: Poly) -> tuple[Poly, Poly]:
    if d is None or d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    n._check(d)
    r = list(n.coeffs)
    dd = len(d.coeffs) - 1
    if len(r) - 1 < dd:
        return Poly((), n.var), n
    lc = d.coeffs[-1]
    q = [_ZERO] * (len(r) - dd)
    for k in range(len(r) - 1 - dd, -1, -1):
        c = r[k + dd]
        if c == 0:
            continue
        c = c / lc
        q[k] = c
        for j, dc in enumerate(d.coeffs):
            r[k + j] = r[k + j] - c * dc
    return Poly(q, n.var), Poly(r[:dd], n.var)


def poly_exact_div(n: Poly, d: Poly) -> Poly:
    q, r = poly_divrem(n, d)
    if not r.is_zero():
        raise ArithmeticError("division is not exact")
    return q


def prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    delta = a.degree - b.degree
    if delta < 0:
        return a
    return poly_divrem(a * (b.lc() ** (delta + 1)), b)[1]


def subresultant_prs(a: Poly, b: Poly) -> list[Poly]:
    """Subresultant polynomial remainder sequence of a and b (deg a >= deg b)."""
    if a.degree < b.degree:
        a, b = b, a
    seq = [a, b]
    if b.is_zero():
        return seq[:1]
    g = _ONE
    h = _ONE
    while True:
        delta = a.degree - b.degree
        r = prem(a, b)
        if r.is_zero():
            break
        a, b = b, r / (g * h ** delta)
        seq.append(b)
        g = a.lc()
        h = _next_h(h, g, delta)
        if b.degree == 0:
            break
    return seq


def _next_h(h, g, delta: int):
    # h^(1 - delta) * g^delta without negative powers
    if delta == 0:
        return h
    if delta == 1:
        return g
    return (g ** delta) / (h ** (delta - 1))


def _rational_gcd(p: Poly, q: Poly) -> Poly:
    # sympy's gcd over QQ avoids the coefficient growth of a Fraction PRS
    import sympy
    z = sympy.Symbol("_z")
    sp, sq = (sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                          for c in reversed(r.coeffs)], z, domain=sympy.QQ) for r in (p, q))
    g = sp.gcd(sq)
    return Poly([Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())], p.var)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd: sympy over Q, otherwise the last nonzero subresultant."""
    p._check(q)
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if min(p.degree, q.degree) > 1 and all(isinstance(c, Fraction)
                                           for c in (*p.coeffs, *q.coeffs)):
        return _rational_gcd(p, q).monic()
    return subresultant_prs(p, q)[-1].monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) monic."""
    r0, r1 = a, b
    s0, s1 = a.one(), a.zero()
    t0, t1 = a.zero(), a.one()
    while not r1.is_zero():
        qq, rr = poly_divrem(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, s0 - qq * s1
        t0, t1 = t1, t0 - qq * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc()
    return r0 / lc, s0 / lc, t0 / lc


def poly_resultant(p: Poly, q: Poly):
    """Res(p, q) with respect to the polynomials' indeterminate, by the
    subresultant algorithm."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    p._check(q)
    a, b = p, q
    s = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            s = -1
    if b.degree == 0:
        return s * b.lc() ** a.degree
    g = _ONE
    h = _ONE
    while True:
        da, db = a.degree, b.degree
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem(a, b)
        a = b
        if r.is_zero():
            return _ZERO
        b = r / (g * h ** delta)
        g = a.lc()
        h = _next_h(h, g, delta)
        if b.degree == 0:
            break
    da = a.degree
    if da == 1:
        h = b.lc()
    else:
        h = (b.lc() ** da) / (h ** (da - 1))
    return s * h


def sylvester_resultant(p: Poly, q: Poly):
    """Resultant as the Sylvester determinant (reference implementation)."""
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([_ZERO] * i + pc + [_ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([_ZERO] * i + qc + [_ZERO] * (size - n - 1 - i))
    from .linalg import det
    return det(rows)


# -- square roots and interpolation ----------------------------------------------

def poly_sqrt(q: Poly, extend: bool = False) -> Optional[Poly]:
    """g with g*g == q, or None.

    The leading coefficient of g is the positive square root of lc(q) when that
    is rational.  With ``extend=True`` a non-square rational leading
    coefficient is allowed and g then has coefficients in Q(sqrt lc)."""
    if q.is_zero():
        return q
    n = q.degree
    if n % 2:
        return None
    lc = q.lc()
    s = scalar_sqrt(lc)
    if s is None:
        return None
    if isinstance(s, Quad) and not isinstance(lc, Quad) and not extend:
        return None
    m = n // 2
    g = [_ZERO] * (m + 1)
    g[m] = s
    two_s = 2 * s
    for k in range(1, m + 1):
        acc = q.coeff(n - k)
        for i in range(1, k):
            acc = acc - g[m - i] * g[m - k + i]
        g[m - k] = acc / two_s
    out = Poly(g, q.var)
    if out * out != q:
        return None
    return out


def lagrange_interpolate(points: Sequence[tuple], var: str = "x") -> Poly:
    """Unique polynomial of degree < len(points) through the given points
    (Newton divided differences)."""
    xs = [_norm_coeff(p[0]) for p in points]
    for i in range(len(xs)):
        for j in range(i):
            if xs[i] == xs[j]:
                raise ValueError("repeated abscissa in interpolation")
    if not points:
        return Poly((), var)
    coef = [_norm_coeff(p[1]) for p in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly([coef[-1]], var)
    for i in range(n - 2, -1, -1):
        out = out * Poly([-xs[i], _ONE], var) + coef[i]
    return out


def crt(residues: Sequence[tuple[Poly, Poly]]) -> Poly:
    """Solve b = r_i mod m_i for pairwise coprime moduli m_i."""
    if not residues:
        raise ValueError("empty CRT system")
    b, m = residues[0][0] % residues[0][1], residues[0][1]
    for r, mi in residues[1:]:
        g, s, _t = poly_xgcd(m, mi)
        if g.degree != 0:
            raise ValueError("CRT moduli are not coprime")
        # b + m*k = r mod mi  =>  k = s*(r - b) mod mi
        k = (s * (r - b)) % mi
        b = b + m * k
        m = m * mi
        b = b % m
    return b
