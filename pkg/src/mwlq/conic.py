"""Plane conics as symmetric 3x3 matrices in the coordinates (T, X, Z)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith.linalg import det

# monomial order of a conic's coefficient vector
CONIC_MONOMIALS = ("TT", "XX", "ZZ", "TX", "TZ", "XZ")


@dataclass(frozen=True)
class Conic:
    matrix: tuple  # 3x3 tuple of tuples, symmetric

    @staticmethod
    def from_coefficients(c: Sequence) -> "Conic":
        """From coefficients of T^2, X^2, Z^2, TX, TZ, XZ."""
        a, b, cc, d, e, f = [Fraction(v) if isinstance(v, int) else v for v in c]
        h = Fraction(1, 2)
        m = ((a, d * h, e * h), (d * h, b, f * h), (e * h, f * h, cc))
        return Conic(m)

    def coefficients(self) -> list:
        m = self.matrix
        return [m[0][0], m[1][1], m[2][2], 2 * m[0][1], 2 * m[0][2], 2 * m[1][2]]

    def det(self):
        return det([list(r) for r in self.matrix])

    @property
    def smooth(self) -> bool:
        return self.det() != 0

    def evaluate(self, p: Sequence):
        m = self.matrix
        return sum((p[i] * m[i][j] * p[j] for i in range(3) for j in range(3)),
                   Fraction(0))

    def contains(self, p: Sequence) -> bool:
        return self.evaluate(p) == 0

    def proportional_to(self, other: "Conic") -> bool:
        a, b = self.coefficients(), other.coefficients()
        k = next((i for i, v in enumerate(a) if v != 0), None)
        if k is None or b[k] == 0:
            return False
        r = b[k] / a[k]
        return all(r * x == y for x, y in zip(a, b))
