"""Preparation, certificates, the conic oracle and the fixture searches."""

import random
from fractions import Fraction

import pytest

from mwlq.arith.field import Quad
from mwlq.arith.mpoly import MPoly
from mwlq.certify import (ConfigurationError, HypothesisError, certify_a2a1, certify_harris,
                          certify_theorem_main, conic_through_points_oracle, contact_points,
                          measured_class, parity_record, prepare)
from mwlq.certify.fixtures import (FIXTURES, bitangent_product_quartic, fixture_input,
                                   fixture_quartic, random_normal_form_fixture, search_a2a1,
                                   search_three_nodes)
from mwlq.certify.serialize import dumps
from mwlq.quartic.bitangent import FieldExtensionRequired, is_weak_bitangent, line_to_sections


def test_oracle_rank_and_uniqueness():
    pts = [(Fraction(1), Fraction(0), Fraction(1)), (Fraction(-1), Fraction(0), Fraction(1)),
           (Fraction(0), Fraction(1), Fraction(1)), (Fraction(0), Fraction(-1), Fraction(1)),
           (Fraction(3, 5), Fraction(4, 5), Fraction(1))]
    res = conic_through_points_oracle(pts)
    assert res.rank == 5 and res.unique
    # the unit circle T^2 + X^2 - Z^2
    assert all(res.conic.evaluate(p) == 0 for p in pts)
    assert not conic_through_points_oracle(pts[:4]).unique


def test_oracle_splits_quadratic_rows():
    r = Quad.make(0, 1, 2)
    pts = [(r, Fraction(0), Fraction(1)), (-r, Fraction(0), Fraction(1))]
    res = conic_through_points_oracle(pts)
    # a conjugate pair imposes the same two rational conditions as either point
    assert res.rank == 2
    assert res.rank == conic_through_points_oracle(pts[:1]).rank


def test_prepare_twists_for_rational_lifts(fixture_setup):
    setup = fixture_setup("three-nodes")
    assert "71" in setup.twist_reason
    for L, _ in setup.lines():
        line_to_sections(setup.E, setup.F, L)


def test_prepare_without_twist_needs_extension():
    doc = fixture_input("three-nodes")
    setup = prepare(fixture_quartic("three-nodes"),
                    tuple(Fraction(c) for c in doc["marked_point"]), twist=None)
    with pytest.raises(FieldExtensionRequired):
        for L, _ in setup.lines():
            line_to_sections(setup.E, setup.F, L)


def test_certificate_json_is_stable(fixture_setup):
    setup = fixture_setup("two-conics")
    lines = [L for L, _ in setup.lines()[:3]]
    a = certify_theorem_main(setup, lines)
    b = certify_theorem_main(setup, lines)
    assert a.passed
    assert dumps(a.to_json()) == dumps(b.to_json())
    assert a.to_json()["schema"] == "mwlq-cert/1"


def test_certificate_points_lie_on_lines_and_conic(fixture_setup):
    setup = fixture_setup("triple-point")
    lines = [L for L, _ in setup.lines()[:3]]
    cert = certify_theorem_main(setup, lines)
    assert cert.passed
    conic = cert.extra["conic"]
    for cd in [is_weak_bitangent(setup.F, L, setup.singular_points) for L in lines]:
        for p in contact_points(cd):
            assert conic.contains(p)


def test_theorem_needs_three_lines(fixture_setup):
    setup = fixture_setup("two-conics")
    with pytest.raises(HypothesisError):
        certify_theorem_main(setup, [L for L, _ in setup.lines()[:2]])


def test_variant_configuration_mismatch(fixture_setup):
    with pytest.raises(ConfigurationError):
        certify_harris(fixture_setup("a2a1"), "three-nodes")
    with pytest.raises(ConfigurationError):
        certify_a2a1(fixture_setup("two-conics"))


def test_measured_class_falls_back_to_norm(fixture_setup):
    setup = fixture_setup("three-nodes")
    hows = {measured_class(setup, L)[2] for L, _ in setup.enumeration.exact}
    assert hows == {"lift", "norm"}


def test_parity_record_on_differences(fixture_setup):
    setup = fixture_setup("two-conics")
    Q = [line_to_sections(setup.E, setup.F, L)[0] for L, _ in setup.lines()]
    rec = parity_record(setup, [1, -1], Q[:2])
    assert rec["predicted"] == 0 and rec["agree"]
    assert parity_record(setup, [1, -1], [Q[0], Q[0]])["image_kind"] == "zero"


def test_fixture_searches_reproduce_shipped_fixtures():
    for search, name in ((search_a2a1, "a2a1"), (search_three_nodes, "three-nodes")):
        doc = search(seed=0)
        shipped = fixture_input(name)
        assert doc["coefficients"] == shipped["coefficients"]
        assert doc["marked_point"] == shipped["marked_point"]


def test_search_budget_exhaustion_returns_none():
    assert search_a2a1(seed=1, budget=0) is None


def test_random_normal_form_fixture_lines():
    norm, lines = random_normal_form_fixture(random.Random(7))
    F = norm.quartic
    assert F.normal_form and len(lines) == 4
    for L in lines:
        assert is_weak_bitangent(F, L) is not None


def test_bitangent_product_quartic_contacts():
    T, X, Z = MPoly.gens(3)
    C = T * T + X * X - Z * Z * 4
    lines = [(Fraction(1), Fraction(1), Fraction(k)) for k in (1, 2, 3, 5)]
    F = bitangent_product_quartic(C, lines, Fraction(1))
    for ell in lines:
        p = (Fraction(0), -ell[2], ell[1])
        q = (-ell[2], Fraction(0), ell[0])
        for pt in (p, q):
            assert F(pt) == C(*pt) ** 2


def test_all_fixtures_listed():
    assert set(FIXTURES) == {"two-conics", "three-nodes", "triple-point", "a2a1"}


def test_oracle_six_generic_points_have_no_conic():
    pts = [(Fraction(a), Fraction(b), Fraction(1))
           for a, b in ((0, 0), (1, 0), (0, 1), (2, 3), (5, -1), (-3, 7))]
    res = conic_through_points_oracle(pts)
    assert res.rank == 6 and res.conic is None


def test_flipping_all_signs_negates_the_sum(fixture_setup):
    setup = fixture_setup("two-conics")
    lines = [L for L, _ in setup.lines()[:3]]
    cert = certify_theorem_main(setup, lines)
    assert cert.passed
    signs = cert.data["signs"]
    flipped = certify_theorem_main(setup, lines, [-s for s in signs])
    assert flipped.passed
    assert flipped.extra["L4"] == cert.extra["L4"]
    assert flipped.extra["P4"].y == -cert.extra["P4"].y
    assert flipped.extra["conic"].proportional_to(cert.extra["conic"])
