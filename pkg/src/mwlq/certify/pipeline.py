"""End-to-end certification: three weak-bitangent lines, their lifts, the
one-shot sum, the fourth line, the conic b = 0, and an independent rank check
that every intersection point of the quartic with the four lines is on it."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..arith.field import FieldError, format_scalar, square_class
from ..arith.linalg import matmul, transpose
from ..arith.poly import Poly
from ..conic import Conic
from ..elliptic import (CurvePoint, FunctionFieldCurve, curve_from_cubic, linear_combination,
                        point_validate)
from ..mumford import ConicDegreeError, Sum3Identity, conic_from_b, divisor_build, sum3
from ..mwl.fibers import UnsupportedFiberError, fibers_from_singularities
from ..mwl.heights import (HeightClass, SurfaceModel, classify_section_by_height,
                           line_self_height, theta_parity)
from ..quartic.bitangent import (BitangentEnumeration, ContactDivisor, FieldExtensionRequired,
                                 enumerate_bitangents,
                                 infinity_behaviour, is_weak_bitangent, line_to_sections,
                                 section_image_kind)
from ..quartic.forms import (Normalization, ProjLine, Quartic, format_point,
                             identity_normalization, normalize_point, normalize_quartic)
from ..quartic.singular import classify_singularities, singularity_multiset
from .oracle import conic_through_points_oracle
from .serialize import bivariate_json, point_json, ratfunc_json

SCHEMA = "mwlq-cert/1"
SIGN_CLASSES = ((1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1))
_ZERO = Fraction(0)
_ONE = Fraction(1)


class HypothesisError(ValueError):
    """Inputs violate a hypothesis of the certified statement."""


class ConfigurationError(HypothesisError):
    """Singularity configuration or line count does not match the variant."""


# -- setup -------------------------------------------------------------------

@dataclass
class QuarticSetup:
    """A quartic with marked point in normal form, with its singularities,
    curve, weak-bitangents and (for A_n singularities) the height model."""

    source: Quartic
    norm: Normalization
    records: list
    enumeration: BitangentEnumeration
    E: FunctionFieldCurve
    model: Optional[SurfaceModel]
    twist_reason: str = ""

    @property
    def F(self) -> Quartic:
        return self.norm.quartic

    @property
    def singular_points(self) -> list[tuple]:
        return [normalize_point(r.point) for r in self.records]

    @property
    def configuration(self) -> tuple:
        return singularity_multiset(self.records)

    def lines(self, kinds: Sequence[str] = ("bitangent", "4-fold")) -> list:
        return [(L, cd) for L, cd in self.enumeration.exact if cd.kind in kinds]

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "normal_form": self.F.to_json(),
            "transform": self.norm.to_json(),
            "singularities": [r.to_json() for r in self.records],
        }


def _build(source: Quartic, norm: Normalization, reason: str = "") -> QuarticSetup:
    F = norm.quartic
    records = classify_singularities(F)
    en = enumerate_bitangents(F, [r.point for r in records])
    E = curve_from_cubic(*F.weierstrass_coefficients())
    try:
        model = SurfaceModel(E, fibers_from_singularities(F, records))
    except (UnsupportedFiberError, FieldError):
        model = None
    return QuarticSetup(source, norm, records, en, E, model, reason)


def _lift_classes(lines) -> Optional[set]:
    """Square classes of the leading coefficients of the line restrictions;
    None when some coefficient is irrational."""
    out = set()
    for _, cd in lines:
        try:
            out.add(square_class(cd.lam))
        except (TypeError, ValueError):
            return None
    return out


def prepare(source: Quartic, z_o: Optional[Sequence] = None, p=None, q=None,
            twist="auto", field_ext: int = 0) -> QuarticSetup:
    """Normalize, then (with ``twist="auto"``) rescale Z so that every exact
    weak-bitangent lifts to K(t) without a field extension."""
    if z_o is None:
        norm = identity_normalization(source)
    else:
        norm = normalize_quartic(source, z_o, p, q, None, field_ext)
    if twist not in (None, "auto") and twist != 1:
        norm = norm.with_twist(twist)
    setup = _build(source, norm)
    if twist != "auto":
        return setup
    classes = _lift_classes(setup.enumeration.exact)
    if classes is None or len(classes) > 1:
        # no uniform class over every exact line: settle for the bitangents
        classes = _lift_classes(setup.lines()) or classes
    if classes is None:
        return setup
    if len(classes) == 1:
        s = classes.pop()
        if s != 1:
            return _build(source, norm.with_twist(Fraction(s)),
                          f"twisted by {s} so that line lifts are rational")
    elif len(classes) > 1:
        setup.twist_reason = "line lifts fall in several square classes; no single twist"
    return setup


# -- certificates ------------------------------------------------------------

@dataclass
class Certificate:
    status: str  # "certified", "sum-is-identity", "not-a-line-section", "failed"
    data: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)  # name -> bool
    parity: list = field(default_factory=list)  # theta parity predictions vs image kinds
    extra: dict = field(default_factory=dict, repr=False)  # live objects, not serialized

    @property
    def passed(self) -> bool:
        return self.status == "certified" and all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "status": self.status,
            "verdict": "pass" if self.passed else "fail",
            "checks": dict(sorted(self.checks.items())),
            "parity_checks": self.parity,
            **self.data,
        }


def _old_conic(norm: Normalization, conic: Conic) -> Conic:
    """The conic in source coordinates: new = M^-1 old."""
    Minv = norm.inverse
    m = matmul(matmul(transpose(Minv), [list(r) for r in conic.matrix]), Minv)
    return Conic(tuple(tuple(r) for r in m))


def contact_points(cd: ContactDivisor) -> list[tuple]:
    pts = []
    for c in cd.contacts:
        if c.point is None:
            raise HypothesisError("contact point not representable exactly")
        pts.append(c.point)
    return pts


def _line_json(L: ProjLine, norm: Normalization) -> dict:
    return {"normal_form": L.to_json(), "source": norm.line_to_old(L).canonical().to_json()}


def _check_lines(setup: QuarticSetup, lines: Sequence[ProjLine]) -> list[ContactDivisor]:
    canon = [L.canonical() for L in lines]
    if len(set(canon)) != len(canon):
        raise HypothesisError("input lines must be pairwise distinct (coincident lines given)")
    out = []
    for L in canon:
        if L.through_marked_point:
            raise HypothesisError("input line passes through the marked point z_o")
        cd = is_weak_bitangent(setup.F, L, setup.singular_points)
        if cd is None:
            raise HypothesisError(f"line {L.to_json()} is not a weak-bitangent")
        out.append(cd)
    return out


def _run_signs(setup: QuarticSetup, lines, cds, lifts, signs) -> Certificate:
    E, F, norm = setup.E, setup.F, setup.norm
    pts = [lifts[i][0 if s > 0 else 1] for i, s in enumerate(signs)]
    data: dict = {
        "signs": list(signs),
        "input_lines": [_line_json(L, norm) for L in lines],
        "lifted_points": [point_json(P) for P in pts],
    }
    checks: dict = {"lifts_on_curve": all(point_validate(E, P) for P in pts)}
    D = divisor_build([(P, 1) for P in pts])
    res = sum3(E, D)
    thetas = [infinity_behaviour_theta(P) for P in pts]
    predicted = theta_parity([1, 1, 1], thetas)
    if isinstance(res, Sum3Identity):
        data["mumford"] = {"a": bivariate_json(res.pair.a), "b": bivariate_json(res.pair.b)}
        return Certificate("sum-is-identity", data, checks)
    P4 = res.point
    kind = section_image_kind(E, F, P4)
    observed = infinity_behaviour_theta(P4)
    # the component at oo is a homomorphism to Z/2; a line-section meets Theta_{oo,1}
    parity = [{"coefficients": [1, 1, 1], "generator_theta": thetas, "predicted": predicted,
               "observed_theta": observed, "image_kind": kind,
               "agree": predicted == observed and (kind != "line" or predicted == 1)}]
    data["mumford"] = {"a": bivariate_json(res.pair.a), "b": bivariate_json(res.pair.b)}
    data["sum"] = {"point": point_json(P4), "b0": ratfunc_json(res.b0),
                   "b1": ratfunc_json(res.b1), "x4": ratfunc_json(res.x4),
                   "y4": ratfunc_json(res.y4), "image_kind": kind}
    x_minus_x4 = Poly([-res.x4, _ONE], "x")
    identity = (res.pair.b * res.pair.b - E.f_poly()
                - x_minus_x4 * res.pair.a * (res.b0 * res.b0))
    checks["identity_b2_minus_f"] = identity.is_zero()
    checks["sum_on_curve"] = point_validate(E, P4)
    if kind != "line":
        data["diagnosis"] = (f"fourth point is not a line-section (image kind {kind}, "
                             f"theta parity {predicted})")
        return Certificate("not-a-line-section", data, checks, parity)
    try:
        conic = conic_from_b(res)
    except ConicDegreeError as exc:
        data["diagnosis"] = str(exc)
        return Certificate("not-a-line-section", data, checks, parity)
    alpha = res.x4.as_poly().coeff(1)
    beta = res.x4.as_poly().coeff(0)
    L4 = ProjLine.from_affine(alpha, beta).canonical()
    cd4 = is_weak_bitangent(F, L4, setup.singular_points)
    checks["fourth_line_weak_bitangent"] = cd4 is not None
    if cd4 is None:
        return Certificate("failed", data, checks, parity)
    all_cds = list(cds) + [cd4]
    points: list[tuple] = []
    for cd in all_cds:
        for p in contact_points(cd):
            if p not in points:
                points.append(p)
    checks["points_on_quartic"] = all(F(p) == 0 for p in points)
    checks["points_on_lines"] = all(any(cd.line.contains(p) for cd in all_cds) for p in points)
    checks["points_on_conic"] = all(conic.contains(p) for p in points)
    oracle = conic_through_points_oracle(points)
    checks["oracle_rank_at_most_5"] = oracle.rank <= 5
    checks["oracle_agrees_with_b"] = (oracle.conic is not None
                                      and oracle.conic.proportional_to(conic))
    old = _old_conic(norm, conic)
    old_pts = [norm.to_old(p) for p in points]
    checks["source_points_on_quartic"] = all(setup.source(p) == 0 for p in old_pts)
    checks["source_points_on_conic"] = all(old.contains(p) for p in old_pts)
    data.update({
        "fourth_line": _line_json(L4, norm),
        "contacts": [cd.to_json() for cd in all_cds],
        "points": {"normal_form": [format_point(p) for p in points],
                   "source": [format_point(p) for p in old_pts]},
        "conic": {"normal_form": [format_scalar(c) for c in conic.coefficients()],
                  "source": [format_scalar(c) for c in _primitive(old.coefficients())],
                  "monomials": ["TT", "XX", "ZZ", "TX", "TZ", "XZ"],
                  "determinant": format_scalar(conic.det()),
                  "smooth": conic.smooth},
        "oracle": oracle.to_json(),
    })
    cert = Certificate("certified", data, checks, parity)
    cert.extra = {"P4": P4, "L4": L4, "conic": conic, "oracle": oracle, "points": points,
                  "lifts": pts}
    return cert


def infinity_behaviour_theta(P: CurvePoint) -> int:
    pole, val = infinity_behaviour(P)
    return 1 if pole == 0 and val == (_ZERO, _ZERO) else 0


def parity_record(setup: QuarticSetup, coeffs: Sequence[int],
                  points: Sequence[CurvePoint]) -> dict:
    """Theta parity prediction for sum c_i P_i against the combination
    itself: the component it meets at oo and its image kind."""
    thetas = [infinity_behaviour_theta(P) for P in points]
    predicted = theta_parity(coeffs, thetas)
    S = linear_combination(setup.E, coeffs, points)
    if S.is_infinity:
        return {"coefficients": list(coeffs), "generator_theta": thetas,
                "predicted": predicted, "observed_theta": 0, "image_kind": "zero",
                "agree": predicted == 0}
    observed = infinity_behaviour_theta(S)
    kind = section_image_kind(setup.E, setup.F, S)
    return {"coefficients": list(coeffs), "generator_theta": thetas, "predicted": predicted,
            "observed_theta": observed, "image_kind": kind,
            "agree": predicted == observed and (kind != "line" or predicted == 1)}


def _primitive(cs: list) -> list:
    """Scale a rational vector to have first nonzero entry 1."""
    k = next((c for c in cs if c != 0), _ONE)
    return [c / k for c in cs]


def certify_theorem_main(setup: QuarticSetup, lines: Sequence[ProjLine],
                         signs: Optional[Sequence[int]] = None) -> Certificate:
    """Three weak-bitangents -> the fourth line and the conic through all
    intersection points.  Without ``signs`` the four sign classes are tried
    in order and the first certified one is returned."""
    if len(lines) != 3:
        raise HypothesisError("exactly three lines are required")
    cds = _check_lines(setup, lines)
    lines = [cd.line for cd in cds]
    lifts = [line_to_sections(setup.E, setup.F, L) for L in lines]
    tries = [tuple(signs)] if signs is not None else list(SIGN_CLASSES)
    first = None
    parity: list = []
    for sg in tries:
        cert = _run_signs(setup, lines, cds, lifts, sg)
        cert.data["setup"] = setup.to_json()
        for entry in cert.parity:
            parity.append(dict(entry, signs=list(sg)))
        if cert.passed:
            cert.parity = parity
            return cert
        first = first or cert
    first.parity = parity
    return first


# -- Harris-type configurations ----------------------------------------------

VARIANTS = {
    "two-conics": (("A1", "A1", "A1", "A1"), "two-conics"),
    "three-nodes": (("A1", "A1", "A1"), "irreducible"),
    "triple-point": (("D4",), "irreducible"),
}


def _heights_block(setup: QuarticSetup, points: Sequence[CurvePoint]) -> Optional[list]:
    if setup.model is None:
        return None
    out = []
    for P in points:
        inc = setup.model.incidence(P)
        h = setup.model.height(P)
        out.append({"height": format_scalar(h), "s.O": inc.s_dot_o,
                    "theta_oo": inc.theta_infinity,
                    "class": str(classify_section_by_height(h, inc.theta_infinity,
                                                            setup.configuration))})
    return out


def geometric_class(setup: QuarticSetup, cd: ContactDivisor) -> HeightClass:
    """The type of a weak-bitangent read off its contact points."""
    kinds = {normalize_point(r.point): r.kind for r in setup.records}
    through = [kinds[normalize_point(c.point)] for c in cd.singular_contacts()]
    if not through:
        return HeightClass("bitangent")
    return HeightClass("weak-bitangent",
                       tuple(sorted(through, key=lambda k: (k[0], -int(k[1:])))))


def measured_class(setup: QuarticSetup, L: ProjLine) -> tuple[Fraction, HeightClass, str]:
    """Height of the lift of L, the type it classifies back to, and how the
    height was obtained: "lift" from the section itself, or "norm" from
    eta^2 alone when the lift needs a square root outside the field."""
    if setup.model is None:
        raise HypothesisError("no height model for this singularity configuration")
    try:
        P, _ = line_to_sections(setup.E, setup.F, L)
    except (FieldExtensionRequired, FieldError):
        h = line_self_height(setup.model.fibers, setup.F, L)
        return h, classify_section_by_height(h, 1, setup.configuration), "norm"
    inc = setup.model.incidence(P)
    h = setup.model.height(P)
    return h, classify_section_by_height(h, inc.theta_infinity, setup.configuration), "lift"


def certify_harris(setup: QuarticSetup, variant: str) -> Certificate:
    if variant not in VARIANTS:
        raise ConfigurationError(f"unknown variant {variant!r}")
    want, comp = VARIANTS[variant]
    got = setup.configuration
    if got != want:
        raise ConfigurationError(
            f"variant {variant} needs singularities {'+'.join(want)}, found "
            f"{'+'.join(got) or 'none'}")
    if setup.F.component_type != comp:
        raise ConfigurationError(f"variant {variant} needs a {comp} quartic, found "
                                 f"{setup.F.component_type}")
    bit = setup.lines()
    if len(bit) != 4:
        raise ConfigurationError(f"expected 4 exact bitangent lines, found {len(bit)} "
                                 f"(and {len(setup.enumeration.numeric)} numeric-only)")
    lines = [L for L, _ in bit]
    cert = certify_theorem_main(setup, lines[:3])
    if cert.status == "certified":
        L4 = cert.extra["L4"]
        cert.checks["fourth_line_is_fourth_bitangent"] = L4 == lines[3].canonical()
        cert.checks["conic_smooth"] = cert.extra["conic"].smooth
        cert.checks["oracle_unique_conic"] = cert.extra["oracle"].rank == 5
        cert.checks["eight_contact_points"] = len(cert.extra["points"]) == 8
        hb = _heights_block(setup, cert.extra["lifts"] + [cert.extra["P4"]])
        if hb is not None:
            cert.data["heights"] = hb
            cert.checks["bitangent_heights"] = all(h["height"] == "3/2" for h in hb)
    cert.data["variant"] = variant
    cert.data["bitangents_found"] = len(bit)
    return cert


# -- A2 + A1 ------------------------------------------------------------------

@dataclass
class A2A1Lines:
    x: tuple  # the A2 point
    y: tuple  # the A1 point
    L: list  # [(ProjLine, ContactDivisor)] through x with I_x = 2
    M: list  # through y with I_y = 2
    both: list  # through x and y
    other: list  # weak-bitangents through x or y of other multiplicities


def _mult_at(cd: ContactDivisor, p: tuple) -> int:
    for c in cd.contacts:
        if c.point is not None and normalize_point(c.point) == p:
            return c.multiplicity
    return 0


def a2a1_lines(setup: QuarticSetup) -> A2A1Lines:
    recs = {r.kind: normalize_point(r.point) for r in setup.records}
    if setup.configuration != ("A1", "A2"):
        raise ConfigurationError(
            f"needs singularities A2+A1, found {'+'.join(setup.configuration) or 'none'}")
    x, y = recs["A2"], recs["A1"]
    L, M, both, other = [], [], [], []
    for line, cd in setup.enumeration.exact:
        if cd.kind != "through-singular":
            continue
        ix, iy = _mult_at(cd, x), _mult_at(cd, y)
        if ix and iy:
            both.append((line, cd))
        elif ix == 2:
            L.append((line, cd))
        elif iy == 2:
            M.append((line, cd))
        else:
            other.append((line, cd))
    return A2A1Lines(x, y, L, M, both, other)


def certify_a2a1(setup: QuarticSetup) -> list[Certificate]:
    """For every pair (L_i, L_j) find the unique pair (M_a, M_b) whose six
    intersection points lie on a conic."""
    if setup.F.component_type != "irreducible":
        raise ConfigurationError("the A2+A1 statement needs an irreducible quartic")
    lines = a2a1_lines(setup)
    if len(lines.L) != 4 or len(lines.M) != 3:
        raise ConfigurationError(
            f"line counts violate the A2+A1 statement: {len(lines.L)} lines through the A2 "
            f"point and {len(lines.M)} through the A1 point (expected 4 and 3)")
    certs = []
    for i, j in itertools.combinations(range(4), 2):
        Li, Lj = lines.L[i][0], lines.L[j][0]
        found = []
        attempts = []
        for a in range(3):
            for sg in SIGN_CLASSES:
                cert = certify_theorem_main(setup, [Li, Lj, lines.M[a][0]], sg)
                attempts.append(cert.status)
                if cert.status != "certified":
                    continue
                L4 = cert.extra["L4"]
                b = next((k for k, (m, _) in enumerate(lines.M) if m.canonical() == L4), None)
                if b is not None and b != a:
                    found.append((min(a, b), max(a, b), cert))
        pairs = sorted({(a, b) for a, b, _ in found})
        # uniqueness by exhaustion: which of the three M-pairs put the six points on a conic
        oracle_pairs = []
        for a, b in itertools.combinations(range(3), 2):
            pts = []
            for cd in (lines.L[i][1], lines.L[j][1], lines.M[a][1], lines.M[b][1]):
                pts.extend(contact_points(cd))
            if conic_through_points_oracle(pts).rank <= 5:
                oracle_pairs.append((a, b))
        if not found:
            cert = Certificate("failed", {"pair": [i, j], "attempts": attempts}, {})
            certs.append(cert)
            continue
        cert = next(c for a, b, c in found if (a, b) == pairs[0])
        cert.data["pair"] = [i, j]
        cert.data["m_pair"] = list(pairs[0])
        cert.data["oracle_m_pairs"] = [list(p) for p in oracle_pairs]
        cert.checks["unique_m_pair"] = len(pairs) == 1
        cert.checks["oracle_uniqueness"] = oracle_pairs == pairs
        cert.checks["six_points"] = len(cert.extra["points"]) == 6
        cert.checks["conic_smooth"] = cert.extra["conic"].smooth
        certs.append(cert)
    conics = [c.extra["conic"] for c in certs if c.status == "certified"]
    distinct = all(not conics[k].proportional_to(conics[l])
                   for k, l in itertools.combinations(range(len(conics)), 2))
    for c in certs:
        c.checks["conics_distinct"] = distinct and len(conics) == 6
    return certs
