"""Quartic forms, normalization, singularities and weak-bitangents."""

from fractions import Fraction

import pytest

from mwlq.arith.field import Quad
from mwlq.arith.mpoly import MPoly
from mwlq.certify.fixtures import fixture_quartic
from mwlq.quartic.bitangent import (EnumerationError, enumerate_bitangents, is_weak_bitangent,
                                    line_to_sections, section_image_kind)
from mwlq.quartic.forms import (NormalizationError, ProjLine, Quartic, normalize_point,
                                normalize_quartic, residual_tangent_points, restrict_to_line)
from mwlq.quartic.singular import (NonReducedError, classify_point, classify_singularities,
                                   singularity_multiset)

T, X, Z = MPoly.gens(3)


def test_quartic_coefficient_round_trip():
    F = fixture_quartic("two-conics")
    assert Quartic.from_coefficients(F.coefficients_json()) == F
    assert F.component_type == "two-conics"


def test_normal_form_detection(fixture_setup):
    setup = fixture_setup("three-nodes")
    assert setup.F.normal_form
    assert not fixture_quartic("three-nodes").normal_form


def test_normalization_maps_points_and_lines(fixture_setup):
    setup = fixture_setup("a2a1")
    norm = setup.norm
    for r in setup.records:
        assert setup.source(norm.to_old(r.point)) == 0
    for L, cd in setup.lines():
        old = norm.line_to_old(L)
        for c in cd.contacts:
            if c.point is not None:
                assert old.contains(norm.to_old(c.point))


def test_normalization_rejects_point_off_curve():
    F = fixture_quartic("two-conics")
    with pytest.raises(NormalizationError):
        normalize_quartic(F, (Fraction(0), Fraction(0), Fraction(1)))


def test_residual_tangent_points_are_on_tangent():
    doc_pt = (Fraction(-1312, 1937), Fraction(3420, 1937), Fraction(1))
    F = fixture_quartic("two-conics")
    tangent, residual = residual_tangent_points(F, doc_pt)
    assert len(residual) == 2
    for p in residual:
        assert F(p) == 0
        assert tangent.contains(p)


@pytest.mark.parametrize("name, expected", [
    ("two-conics", ("A1", "A1", "A1", "A1")),
    ("three-nodes", ("A1", "A1", "A1")),
    ("triple-point", ("D4",)),
    ("a2a1", ("A1", "A2")),
])
def test_singularity_configurations(name, expected):
    assert singularity_multiset(classify_singularities(fixture_quartic(name))) == expected


def test_classify_point_types():
    node = Quartic(X * X * Z * Z - T * T * Z * Z + T ** 4 + X ** 4)
    assert classify_point(node, (Fraction(0), Fraction(0), Fraction(1))).kind == "A1"
    cusp = Quartic(X * X * Z * Z - T ** 3 * Z + X ** 4 + T ** 4)
    assert classify_point(cusp, (Fraction(0), Fraction(0), Fraction(1))).kind == "A2"
    tac = Quartic(X * X * Z * Z - T ** 4 + X ** 3 * T)
    assert classify_point(tac, (Fraction(0), Fraction(0), Fraction(1))).kind == "A3"


def test_non_reduced_quartic_rejected():
    with pytest.raises(NonReducedError):
        classify_singularities(Quartic((T * T + X * X - Z * Z) ** 2))


@pytest.mark.parametrize("name, bitangents", [
    ("two-conics", 4), ("three-nodes", 4), ("triple-point", 4), ("a2a1", 4)])
def test_bitangent_counts(fixture_setup, name, bitangents):
    setup = fixture_setup(name)
    assert len(setup.lines()) == bitangents
    assert not setup.enumeration.numeric


def test_three_nodes_quadratic_lines(fixture_setup):
    setup = fixture_setup("three-nodes")
    quad = [L for L, _ in setup.enumeration.exact if any(isinstance(c, Quad) for c in L.coeffs)]
    assert len(quad) == 6
    assert {c.d for L in quad for c in L.coeffs if isinstance(c, Quad)} == {39121}


def test_weak_bitangent_check(fixture_setup):
    setup = fixture_setup("two-conics")
    L, cd = setup.lines()[0]
    assert is_weak_bitangent(setup.F, L, setup.singular_points) is not None
    assert cd.kind == "bitangent"
    assert is_weak_bitangent(setup.F, ProjLine((Fraction(1), Fraction(-1), Fraction(7))),
                             setup.singular_points) is None


def test_restriction_is_square_and_lifts(fixture_setup):
    setup = fixture_setup("triple-point")
    for L, _ in setup.enumeration.exact:
        q = restrict_to_line(setup.F, L)
        P, Pm = line_to_sections(setup.E, setup.F, L)
        assert (P.y * P.y).as_poly() == q
        assert section_image_kind(setup.E, setup.F, P) == "line"
        assert Pm.y == -P.y


def test_enumeration_needs_normal_form():
    with pytest.raises(EnumerationError):
        enumerate_bitangents(fixture_quartic("two-conics"))


def test_projline_canonical_and_points():
    L = ProjLine((Fraction(2), Fraction(-4), Fraction(6)))
    assert L.canonical() == ProjLine((Fraction(-1, 2), Fraction(1), Fraction(-3, 2))).canonical()
    p, q = L.points()
    assert L.contains(p) and L.contains(q)
    assert normalize_point((Fraction(2), Fraction(4), Fraction(2))) == (1, 2, 1)
