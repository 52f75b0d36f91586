"""Exact scalars: rationals (``Fraction``) and elements of a single quadratic
extension Q(sqrt d).

An element of Q(sqrt d) is a :class:`Quad`.  Whenever the irrational part
vanishes the result collapses back to a plain ``Fraction``, so code that only
ever sees rationals never meets a ``Quad``.  Mixing two different extensions
raises :class:`FieldError`; deeper towers are not supported.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from sympy import factorint


class FieldError(ArithmeticError):
    """Raised for operations that would leave the supported field tower."""


@lru_cache(maxsize=4096)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k*k*d`` and ``d`` squarefree (sign kept in d)."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    k, d = 1, sign
    for p, e in factorint(abs(n)).items():
        p, e = int(p), int(e)  # factorint may hand back sympy Integers
        k *= p ** (e // 2)
        if e % 2:
            d *= p
    return k, d


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def square_class(x: Fraction) -> int:
    """Squarefree integer d with x = d * (rational square)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    return squarefree_decompose(x.numerator * x.denominator)[1]


class Quad:
    """a + b*sqrt(d) with a, b rational, b != 0 and d squarefree, d != 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    @staticmethod
    def make(a, b, d: int) -> Union[Fraction, "Quad"]:
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            return a
        k, d2 = squarefree_decompose(int(d))
        if d2 == 1:
            return a + b * k
        return Quad(a, b * k, d2)

    # -- coercion -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Quad):
            if other.d != self.d:
                raise FieldError(
                    f"cannot mix Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Quad.make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Quad.make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Quad.make(c[0] - self.a, c[1] - self.b, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return Quad.make(self.a * a + self.d * self.b * b,
                         self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "Quad":
        return Quad(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        return Quad.make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Quad.make(self.a / other, self.b / other, self.d)
        if isinstance(other, Quad):
            self._coerce(other)
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self.inverse() * c[0]

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result: Union[Fraction, Quad] = Fraction(1)
        base: Union[Fraction, Quad] = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Quad):
            return (self.d, self.a, self.b) == (other.d, other.a, other.b)
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 by construction
        return NotImplemented

    def __hash__(self):
        return hash(("Quad", self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __float__(self):
        if self.d < 0:
            raise TypeError("complex quadratic element has no real value")
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __complex__(self):
        return complex(float(self.a)) + float(self.b) * complex(self.d) ** 0.5

    def __repr__(self):
        return f"Quad({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, Quad]


def to_scalar(x) -> Scalar:
    if isinstance(x, Quad):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def extension_of(x) -> int:
    """Squarefree d if x lives in Q(sqrt d) properly, else 0."""
    return x.d if isinstance(x, Quad) else 0


def conjugate(x):
    return x.conjugate() if isinstance(x, Quad) else x


def is_rational(x) -> bool:
    return not isinstance(x, Quad)


def scalar_sqrt(x, ext: Optional[int] = None) -> Optional[Scalar]:
    """Square root of x inside Q, Q(sqrt ext), or (for rational x with
    ext None) the extension Q(sqrt x) itself.  Returns None if impossible."""
    if isinstance(x, Quad):
        if ext is not None and ext != x.d:
            raise FieldError("mismatched extension")
        # (u + v r)^2 = a + b r  =>  u^2 + d v^2 = a, 2uv = b
        n = _rational_sqrt(x.norm())
        if n is None:
            return None
        for u2 in ((x.a + n) / 2, (x.a - n) / 2):
            u = _rational_sqrt(u2)
            if u is None or u == 0:
                continue
            v = x.b / (2 * u)
            cand = Quad.make(u, v, x.d)
            if cand * cand == x:
                return cand
        return None
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    r = _rational_sqrt(x)
    if r is not None:
        return r
    k, d = squarefree_decompose(x.numerator * x.denominator)
    if ext is not None and ext != d:
        return None
    return Quad(0, Fraction(k, x.denominator), d)


def sign_key(x) -> tuple:
    """A total order on scalars used only for canonical sorting."""
    if isinstance(x, Quad):
        return (1, x.d, x.a, x.b)
    return (0, 0, Fraction(x), Fraction(0))


# -- serialization ------------------------------------------------------------

def format_scalar(x) -> str:
    if isinstance(x, Quad):
        b = x.b
        sign = "-" if b < 0 else "+"
        head = "" if x.a == 0 else str(x.a)
        if head == "":
            sign = "-" if b < 0 else ""
        return f"{head}{sign}{abs(b)}*sqrt({x.d})"
    return str(Fraction(x))


_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*(?P<a>{_RAT})?\s*(?P<s>[+-])?\s*(?P<b>\d+(?:/\d+)?)?\s*\*?\s*"
    r"sqrt\(\s*(?P<d>[+-]?\d+)\s*\)\s*$")


def parse_scalar(s: str) -> Scalar:
    s = str(s).strip()
    if "sqrt" not in s:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed scalar {s!r}") from exc
    m = _QUAD_RE.match(s)
    if not m:
        raise ValueError(f"malformed scalar {s!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    sg = m.group("s")
    if m.group("a") and sg is None:
        # "3sqrt(2)" style: the leading token is the coefficient
        b, a = a, Fraction(0)
    elif sg == "-":
        b = -b
    return Quad.make(a, b, int(m.group("d")))
