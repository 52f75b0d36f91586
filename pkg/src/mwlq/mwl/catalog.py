"""The static table of Mordell-Weil lattices, keyed by singularity type."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional, Sequence

from ..arith.linalg import det, inverse


class CatalogError(LookupError):
    pass


def cartan(kind: str, n: int) -> list[list[Fraction]]:
    """Cartan matrix of the root lattice A_n or D_n."""
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = Fraction(2)
    if kind == "A":
        for i in range(n - 1):
            m[i][i + 1] = m[i + 1][i] = Fraction(-1)
    elif kind == "D":
        for i in range(n - 2):
            m[i][i + 1] = m[i + 1][i] = Fraction(-1)
        # the fork: node n-1 also attaches to node n-3
        m[n - 3][n - 1] = m[n - 1][n - 3] = Fraction(-1)
    else:
        raise CatalogError(f"unknown root system {kind}")
    return m


_GRAM_RE = re.compile(r"^(?P<s>\d+/\d+)\*(?P<m>\[.*\])$")


def summand_gram(token: str) -> list[list[Fraction]]:
    token = token.strip()
    if token.startswith("<") and token.endswith(">"):
        return [[Fraction(token[1:-1])]]
    if token.endswith("*"):
        kind, n = token[0], int(token[1:-1])
        return inverse(cartan(kind, n))
    m = _GRAM_RE.match(token)
    if m:
        s = Fraction(m.group("s"))
        rows = json.loads(m.group("m"))
        return [[s * v for v in row] for row in rows]
    raise CatalogError(f"unknown lattice summand {token!r}")


def block_diagonal(blocks: Sequence[Sequence[Sequence]]) -> list[list[Fraction]]:
    n = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[k + i][k + j] = Fraction(v)
        k += len(b)
    return out


@dataclass(frozen=True)
class LatticeCatalogRow:
    no: int
    xi: tuple
    trivial: str
    summands: tuple
    torsion: Optional[str]

    @property
    def gram(self) -> list[list[Fraction]]:
        return block_diagonal([summand_gram(s) for s in self.summands])

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def determinant(self) -> Fraction:
        return det(self.gram)

    def describe(self) -> str:
        text = " + ".join(self.summands)
        if self.torsion:
            text += f" + {self.torsion}"
        return text


@lru_cache(maxsize=1)
def load_catalog() -> tuple[LatticeCatalogRow, ...]:
    raw = resources.files("mwlq.data").joinpath("catalog.json").read_text()
    rows = json.loads(raw)["rows"]
    return tuple(LatticeCatalogRow(r["no"], tuple(sorted(r["xi"])), r["trivial"],
                                   tuple(r["mw"]), r["torsion"]) for r in rows)


def lattice_lookup(xi: Sequence[str]) -> LatticeCatalogRow:
    key = tuple(sorted(xi))
    for row in load_catalog():
        if row.xi == key:
            return row
    raise CatalogError(f"singularity configuration {'+'.join(key) or 'empty'} is not in the table")
