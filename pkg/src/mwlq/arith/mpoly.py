"""Sparse multivariate polynomials with exact scalar coefficients.

Used for ternary quartic forms, local equations at singular points, and the
two-variable elimination systems of the bitangent search.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .field import Quad
from .poly import Poly

_ZERO = Fraction(0)
_ONE = Fraction(1)


class MPoly:
    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping[tuple, object], nvars: int):
        clean = {}
        for e, c in terms.items():
            if isinstance(c, int):
                c = Fraction(c)
            if c != 0:
                if len(e) != nvars:
                    raise ValueError("exponent length mismatch")
                clean[tuple(e)] = c
        self.terms = clean
        self.nvars = nvars

    @classmethod
    def const(cls, c, nvars: int) -> "MPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): _ONE}, nvars)

    @classmethod
    def gens(cls, nvars: int) -> list["MPoly"]:
        return [cls.var(i, nvars) for i in range(nvars)]

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def homogeneous_part(self, k: int) -> "MPoly":
        return MPoly({e: c for e, c in self.terms.items() if sum(e) == k}, self.nvars)

    def coeff(self, e: tuple):
        return self.terms.get(tuple(e), _ZERO)

    def field_ext(self) -> int:
        for c in self.terms.values():
            if isinstance(c, Quad):
                return c.d
        return 0

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction, Quad)):
            return MPoly.const(other, self.nvars)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, _ZERO) + c
        return MPoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.nvars)

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
        if isinstance(other, (int, Fraction, Quad)):
            return MPoly({e: c * other for e, c in self.terms.items()}, self.nvars)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, _ZERO) + c1 * c2
        return MPoly(out, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            return MPoly({e: c / other for e, c in self.terms.items()}, self.nvars)
        return NotImplemented

    def __pow__(self, n: int):
        result = MPoly.const(_ONE, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- evaluation and substitution --------------------------------------
    def __call__(self, *values):
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        acc = _ZERO
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
            acc = acc + term
        return acc

    def subs(self, values: Sequence, nvars: int | None = None) -> "MPoly":
        """Substitute MPolys (all in ``nvars`` variables) or scalars for each
        variable."""
        if nvars is None:
            nvars = next(v.nvars for v in values if isinstance(v, MPoly))
        vals = [v if isinstance(v, MPoly) else MPoly.const(v, nvars) for v in values]
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = vals[i] ** k
            return cache[key]

        acc = MPoly({}, nvars)
        for e, c in self.terms.items():
            term = MPoly.const(c, nvars)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def specialize(self, i: int, value) -> "MPoly":
        """Set variable i to a scalar, keeping the variable slot (exponent 0)."""
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out[ne] = out.get(ne, _ZERO) + (c * value ** k if k else c)
        return MPoly(out, self.nvars)

    def diff(self, i: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MPoly(out, self.nvars)

    def to_poly(self, i: int, var: str = "t") -> Poly:
        """Univariate view in variable i; all other exponents must be zero."""
        cs = [_ZERO] * (self.degree_in(i) + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial depends on other variables")
            cs[e[i]] = c
        return Poly(cs, var)

    def coefficients_in(self, i: int) -> list["MPoly"]:
        """Coefficients with respect to variable i (as MPolys with e[i] = 0)."""
        n = self.degree_in(i)
        out = [dict() for _ in range(n + 1)]
        for e, c in self.terms.items():
            out[e[i]][e[:i] + (0,) + e[i + 1:]] = c
        return [MPoly(d, self.nvars) for d in out]

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly({e: fn(c) for e, c in self.terms.items()}, self.nvars)

    def __repr__(self):
        items = sorted(self.terms.items(), reverse=True)
        return "MPoly(" + ", ".join(f"{e}:{c}" for e, c in items) + ")"


def from_poly(p: Poly, i: int, nvars: int) -> MPoly:
    out = {}
    for k, c in enumerate(p.coeffs):
        e = [0] * nvars
        e[i] = k
        out[tuple(e)] = c
    return MPoly(out, nvars)
