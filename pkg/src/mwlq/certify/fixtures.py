"""Shipped test quartics and the parametric searches that produced them.

Each fixture is a JSON input document: {"coefficients": {"ijk": "p/q"},
"marked_point": [...], "field_ext": 0} with ijk the exponents of T, X, Z.

Constructions (z_o is chosen first so that F(z_o) = 0 is linear in one
parameter, then kept only when the residual tangent points are rational):

* two-conics: a product of two conics meeting in four rational points.
* three-nodes: C^2 - k T X Z L with C = aTX + bTZ + cXZ; nodes at the
  coordinate points and T, X, Z, L as the four bitangents.
* triple-point: Z G3(T, X) + H(T, X)^2, a D4 point at [0:0:1].
* a2a1: C^2 - k T (T - X)(X - Z)(X + 2Z) with C = aTX + bTZ + cXZ + dX^2 and
  k = 2c(b + c); an A2 at [0:0:1] and an A1 at [1:0:0].
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from importlib import resources
from typing import Optional

from ..arith.field import Quad, _rational_sqrt
from ..arith.mpoly import MPoly
from ..quartic.forms import NormalizationError, Quartic, format_point, residual_tangent_points
from ..quartic.singular import classify_singularities, singularity_multiset

FIXTURES = {
    "two-conics": "two_conics.json",
    "three-nodes": "three_nodes.json",
    "triple-point": "triple_point.json",
    "a2a1": "a2a1.json",
}


def fixture_input(name: str) -> dict:
    path = resources.files("mwlq.data").joinpath("fixtures", FIXTURES[name])
    return json.loads(path.read_text(encoding="utf-8"))


def fixture_quartic(name: str) -> Quartic:
    return Quartic.from_coefficients(fixture_input(name)["coefficients"])


def input_document(F: Quartic, z_o, note: str = "") -> dict:
    doc = {"coefficients": F.coefficients_json(), "marked_point": format_point(z_o),
           "field_ext": 0}
    if note:
        doc["note"] = note
    return doc


def _gens():
    return MPoly.gens(3)


def a2a1_quartic(a, b, c, d) -> Quartic:
    T, X, Z = _gens()
    k = 2 * c * (b + c)
    C = T * X * a + T * Z * b + X * Z * c + X * X * d
    return Quartic(C * C - T * (T - X) * (X - Z) * (X + Z * 2) * k)


def three_nodes_quartic(a, b, c, ell, k) -> Quartic:
    T, X, Z = _gens()
    C = T * X * a + T * Z * b + X * Z * c
    L = T * ell[0] + X * ell[1] + Z * ell[2]
    return Quartic(C * C - T * X * Z * L * k)


def _residual_rational(F: Quartic, z_o) -> bool:
    try:
        _, res = residual_tangent_points(F, z_o)
    except NormalizationError:
        return False
    return len(res) == 2 and not any(isinstance(c, Quad) for p in res for c in p)


def search_a2a1(seed: int = 0, budget: int = 20000) -> Optional[dict]:
    """Random A2+A1 quartic of the documented family with a usable marked
    point: irreducible, exactly A2 + A1, rational residual tangent points.
    Returns an input document or None when the budget runs out."""
    rng = random.Random(seed)
    small = [Fraction(p, q) for p in (-4, -3, -2, -1, 1, 2, 3, 4) for q in (1, 2)]
    coords = [Fraction(p, q) for p in range(-6, 7) for q in (1, 2, 3, 4) if p]
    for _ in range(budget):
        b, c, d = (rng.choice(small) for _ in range(3))
        if c * (b + c) == 0 or b == -2 * c:
            continue  # b = -2c makes X a component
        z1, z2 = rng.choice(coords), rng.choice(coords)
        k = 2 * c * (b + c)
        r = _rational_sqrt(k * z1 * (z1 - z2) * (z2 - 1) * (z2 + 2))
        if not r:
            continue
        for sign in (1, -1):
            a = (sign * r - b * z1 - c * z2 - d * z2 * z2) / (z1 * z2)
            F = a2a1_quartic(a, b, c, d)
            z_o = (z1, z2, Fraction(1))
            if not _residual_rational(F, z_o):
                continue
            if F.component_type != "irreducible":
                continue
            if singularity_multiset(classify_singularities(F)) != ("A1", "A2"):
                continue
            return input_document(F, z_o, f"a2a1 family a={a} b={b} c={c} d={d}")
    return None


def search_three_nodes(seed: int = 0, budget: int = 20000) -> Optional[dict]:
    """Random three-nodal quartic C^2 - k T X Z L with a usable marked point."""
    rng = random.Random(seed)
    small = (-3, -2, -1, 1, 2, 3)
    coords = [Fraction(p, q) for p in range(-5, 6) for q in (1, 2, 3) if p]
    for _ in range(budget):
        a, b, c, l1, l2, l3 = (Fraction(rng.choice(small)) for _ in range(6))
        z_o = (rng.choice(coords), rng.choice(coords), Fraction(1))
        cz = a * z_o[0] * z_o[1] + b * z_o[0] * z_o[2] + c * z_o[1] * z_o[2]
        den = z_o[0] * z_o[1] * z_o[2] * (l1 * z_o[0] + l2 * z_o[1] + l3 * z_o[2])
        if den == 0 or cz == 0:
            continue
        F = three_nodes_quartic(a, b, c, (l1, l2, l3), cz * cz / den)
        if not _residual_rational(F, z_o):
            continue
        if F.component_type != "irreducible":
            continue
        if singularity_multiset(classify_singularities(F)) != ("A1", "A1", "A1"):
            continue
        return input_document(F, z_o, "three-nodes family")
    return None


def bitangent_product_quartic(C: MPoly, lines, k) -> Quartic:
    """C^2 - k L1 L2 L3 L4: each L_i meets the quartic where C = 0, doubly."""
    T, X, Z = _gens()
    prod = MPoly.const(Fraction(1), 3)
    for ell in lines:
        prod = prod * (T * ell[0] + X * ell[1] + Z * ell[2])
    return Quartic(C * C - prod * k)


def random_normal_form_fixture(rng: random.Random, budget: int = 1000):
    """A normal-form quartic C^2 - k L1 L2 L3 L4 with its four rational
    weak-bitangents, built directly in normal-form coordinates.

    k kills the X^4 coefficient and the TX coefficient of C kills X^3 T; both
    conditions are linear.  Returns (normalization, lines) with the twist that
    puts every line lift over Q, or None when the budget runs out."""
    from ..arith.field import square_class
    from ..quartic.bitangent import is_weak_bitangent
    from ..quartic.forms import ProjLine, identity_normalization
    T, X, Z = _gens()
    small = (-3, -2, -1, 1, 2, 3)
    for _ in range(budget):
        lines = [tuple(Fraction(rng.choice(small if j == 1 else (0,) + small)) for j in range(3))
                 for _ in range(4)]
        cxx = Fraction(rng.choice(small))
        cs = {m: Fraction(rng.choice((0,) + small)) for m in ("TT", "ZZ", "TZ", "XZ")}
        px = Fraction(1)
        for ell in lines:
            px *= ell[1]
        k = cxx * cxx / px
        # X^3 T coefficient of the product: sum_i l_iT prod_{j != i} l_jX
        e_t = sum((ell[0] * px / ell[1] for ell in lines), Fraction(0))
        ctx = k * e_t / (2 * cxx)
        C = (T * T * cs["TT"] + X * X * cxx + Z * Z * cs["ZZ"] + T * X * ctx
             + T * Z * cs["TZ"] + X * Z * cs["XZ"])
        F = bitangent_product_quartic(C, lines, k)
        kappa = F.coeff(0, 3, 1)
        if kappa == 0:
            continue
        F = Quartic(F.form / kappa)
        if not F.normal_form or len({ProjLine(ell).canonical() for ell in lines}) != 4:
            continue
        cds = [is_weak_bitangent(F, ProjLine(ell)) for ell in lines]
        if any(cd is None for cd in cds):
            continue
        classes = {square_class(cd.lam) for cd in cds}
        if len(classes) != 1:
            continue
        s = Fraction(classes.pop())
        if F.component_type != "irreducible":
            continue
        norm = identity_normalization(F)
        if s != 1:
            norm = norm.with_twist(s)
        # Z -> s Z: the line l_T T + l_X X + l_Z Z becomes (l_T, l_X, s l_Z)
        return norm, [ProjLine((ell[0], ell[1], ell[2] * s)).canonical() for ell in lines]
    return None
