"""Independent check that points lie on a conic: rank and kernel of the
Veronese matrix with rows (T^2, X^2, Z^2, TX, TZ, XZ)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..arith.field import Quad, format_scalar
from ..arith.linalg import nullspace, rank
from ..conic import Conic
from ..quartic.forms import format_point, normalize_point


@dataclass(frozen=True)
class OracleResult:
    points: tuple
    rows: tuple  # rational rows actually used
    rank: int
    conic: Optional[Conic]
    kernel_dim: int

    @property
    def unique(self) -> bool:
        return self.kernel_dim == 1

    def to_json(self) -> dict:
        return {
            "points": [format_point(p) for p in self.points],
            "veronese_rows": len(self.rows),
            "rank": self.rank,
            "kernel_dimension": self.kernel_dim,
            "conic": None if self.conic is None
            else [format_scalar(c) for c in self.conic.coefficients()],
        }


def veronese_row(p: Sequence) -> list:
    t, x, z = p
    return [t * t, x * x, z * z, t * x, t * z, x * z]


def _rational_rows(row: list) -> list[list[Fraction]]:
    """A row over Q(sqrt d) imposes two rational conditions on rational
    conic coefficients: its rational and irrational parts."""
    if not any(isinstance(c, Quad) for c in row):
        return [[Fraction(c) for c in row]]
    re = [c.a if isinstance(c, Quad) else Fraction(c) for c in row]
    im = [c.b if isinstance(c, Quad) else Fraction(0) for c in row]
    return [re, im]


def distinct_points(points: Sequence[Sequence]) -> list[tuple]:
    out: list[tuple] = []
    for p in points:
        q = normalize_point(p)
        if q not in out:
            out.append(q)
    return out


def conic_through_points_oracle(points: Sequence[Sequence]) -> OracleResult:
    """Rational conics through the given (distinct) points.  ``conic`` is the
    kernel conic when the kernel is one-dimensional, else None."""
    pts = distinct_points(points)
    rows: list[list[Fraction]] = []
    for p in pts:
        for r in _rational_rows(veronese_row(p)):
            if r not in rows:
                rows.append(r)
    if not rows:
        return OracleResult(tuple(pts), (), 0, None, 6)
    r = rank(rows)
    kernel = nullspace(rows)
    conic = None
    if len(kernel) == 1:
        v = kernel[0]
        # clear denominators and fix the sign of the first nonzero entry
        k = next(c for c in v if c != 0)
        conic = Conic.from_coefficients([c / k for c in v])
    return OracleResult(tuple(pts), tuple(tuple(r_) for r_ in rows), r, conic, len(kernel))
