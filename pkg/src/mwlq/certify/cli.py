"""Command line: analyze, bitangents, sum3, height, certify-main,
certify-harris, certify-a2a1.

Exit status 0 when every requested check passes, 1 on a verification failure,
2 on malformed input or an unmet hypothesis.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from ..arith.field import FieldError, format_scalar, parse_scalar
from ..arith.linalg import det
from ..quartic.forms import (NormalizationError, ProjLine, Quartic, QuarticError, format_point,
                             normalize_point)
from ..quartic.bitangent import line_to_sections
from ..quartic.singular import classify_singularities, singularity_multiset
from ..mwl.catalog import CatalogError, lattice_lookup
from ..mumford import DivisorError
from .fixtures import FIXTURES, fixture_input, search_a2a1
from .pipeline import (Certificate, HypothesisError, certify_a2a1, certify_harris,
                       certify_theorem_main, geometric_class, measured_class, prepare)
from .serialize import dumps, matrix_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


# -- input -------------------------------------------------------------------

def load_input(spec: str) -> dict:
    """A JSON file path, ``-`` for stdin, or ``fixture:NAME``."""
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        if name not in FIXTURES:
            raise InputError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}")
        return fixture_input(name)
    try:
        text = sys.stdin.read() if spec == "-" else open(spec, encoding="utf-8").read()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read quartic input: {exc}") from exc
    if not isinstance(data, dict) or "coefficients" not in data:
        raise InputError("input must be a JSON object with a 'coefficients' map")
    return data


def _point(v) -> Optional[tuple]:
    if v is None:
        return None
    if not isinstance(v, list) or len(v) != 3:
        raise InputError("points are lists of three scalar strings")
    return tuple(parse_scalar(str(c)) for c in v)


def parse_quartic(data: dict) -> Quartic:
    coeffs = data["coefficients"]
    if not isinstance(coeffs, dict):
        raise InputError("'coefficients' must map exponent triples to scalars")
    try:
        return Quartic.from_coefficients({k: parse_scalar(str(v)) for k, v in coeffs.items()})
    except (ValueError, FieldError) as exc:
        raise InputError(f"bad coefficients: {exc}") from exc


def parse_line(text: str) -> ProjLine:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 3:
        raise InputError("a line is given as three comma-separated coefficients lT,lX,lZ")
    try:
        return ProjLine(tuple(parse_scalar(p) for p in parts))
    except (ValueError, FieldError) as exc:
        raise InputError(f"bad line {text!r}: {exc}") from exc


def setup_from(data: dict, field_ext: Optional[int] = None):
    """Prepare the quartic of an input document; ``field_ext`` overrides
    the document's own extension."""
    F = parse_quartic(data)
    if field_ext is None:
        field_ext = int(data.get("field_ext", 0))
    aux = data.get("aux_points", {}) or {}
    twist = data.get("twist", "auto")
    if twist != "auto":
        twist = parse_scalar(str(twist))
    z_o = _point(data.get("marked_point"))
    if z_o is not None and normalize_point(z_o) == (0, 1, 0) and F.normal_form and not aux:
        z_o = None  # already in normal form with the canonical markers
    return prepare(F, z_o, _point(aux.get("p")), _point(aux.get("q")), twist, field_ext)


def _source_lines(setup, texts: Sequence[str], coords: str) -> list[ProjLine]:
    lines = [parse_line(t) for t in texts]
    if coords == "source":
        M = [list(r) for r in setup.norm.matrix]
        # old = M new, so l_new = l_old M
        lines = [ProjLine(tuple(sum((L.coeffs[i] * M[i][j] for i in range(3)), Fraction(0))
                                for j in range(3))) for L in lines]
    return lines


# -- commands ----------------------------------------------------------------

def cmd_analyze(args) -> tuple[int, dict, str]:
    data = load_input(args.input)
    F = parse_quartic(data)
    records = classify_singularities(F)
    xi = singularity_multiset(records)
    out = {"quartic": F.to_json(), "components": F.component_type,
           "singularities": [r.to_json() for r in records], "configuration": list(xi)}
    lines = [f"components: {F.component_type}"]
    if not records:
        lines.append("no singularities")
    else:
        lines.append("singularities: " + ", ".join(
            f"{r.kind} at [{' : '.join(format_point(r.point))}]" for r in records))
    if records and F.component_type in ("irreducible", "two-conics") \
            and all(r.supported for r in records):
        try:
            row = lattice_lookup(xi)
            out["lattice"] = {"row": row.no, "mordell_weil": row.describe(),
                              "rank": row.rank, "determinant": format_scalar(row.determinant),
                              "trivial_lattice": row.trivial}
            lines.append(f"Mordell-Weil lattice (row {row.no}): {row.describe()}")
        except CatalogError as exc:
            lines.append(str(exc))
    if data.get("marked_point") is not None:
        setup = setup_from(data, args.field_ext)
        out["normal_form"] = setup.to_json()
        lines.append("normal form: " + ("ok" if setup.F.normal_form else "failed"))
    return EXIT_OK, out, "\n".join(lines)


def cmd_bitangents(args) -> tuple[int, dict, str]:
    setup = setup_from(load_input(args.input), args.field_ext)
    en = setup.enumeration
    out = {"setup": setup.to_json(),
           "lines": [{"normal_form": L.to_json(),
                      "source": setup.norm.line_to_old(L).canonical().to_json(),
                      "contact": cd.to_json(), "exact": cd.exact} for L, cd in en.exact],
           "numeric_only": [n.to_json() for n in en.numeric]}
    kinds: dict = {}
    for _, cd in en.exact:
        kinds[cd.kind] = kinds.get(cd.kind, 0) + 1
    text = (f"{len(en.exact)} exact weak-bitangent lines "
            f"({', '.join(f'{v} {k}' for k, v in sorted(kinds.items())) or 'none'}), "
            f"{len(en.numeric)} numeric-only")
    return EXIT_OK, out, text


def _certificate_result(certs: Sequence[Certificate], label: str) -> tuple[int, dict, str]:
    ok = all(c.passed for c in certs)
    out = certs[0].to_json() if len(certs) == 1 else \
        {"schema": certs[0].to_json()["schema"], "certificates": [c.to_json() for c in certs],
         "verdict": "pass" if ok else "fail"}
    text = []
    for c in certs:
        failed = [k for k, v in c.checks.items() if not v]
        line = f"{label}: {c.status}"
        if "pair" in c.data:
            line += f" for L-pair {c.data['pair']} with M-pair {c.data.get('m_pair')}"
        if failed:
            line += f" (failed checks: {', '.join(failed)})"
        if c.data.get("diagnosis"):
            line += f" ({c.data['diagnosis']})"
        text.append(line)
    text.append("PASS" if ok else "FAIL")
    return (EXIT_OK if ok else EXIT_FAIL), out, "\n".join(text)


def cmd_certify_main(args) -> tuple[int, dict, str]:
    setup = setup_from(load_input(args.input), args.field_ext)
    if not args.line or len(args.line) != 3:
        raise HypothesisError("give exactly three --line options")
    lines = _source_lines(setup, args.line, args.coords)
    signs = None
    if args.signs:
        signs = tuple(1 if s in ("+", "+1", "1") else -1 for s in args.signs.split(","))
        if len(signs) != 3:
            raise InputError("--signs takes three comma-separated signs")
    return _certificate_result([certify_theorem_main(setup, lines, signs)], args.command)


def cmd_certify_harris(args) -> tuple[int, dict, str]:
    setup = setup_from(load_input(args.input), args.field_ext)
    return _certificate_result([certify_harris(setup, args.variant)], args.command)


def cmd_certify_a2a1(args) -> tuple[int, dict, str]:
    if args.search:
        hit = search_a2a1(seed=args.seed)
        if hit is None:
            return EXIT_FAIL, {"search": "no fixture found within budget"}, \
                "no A2+A1 fixture found within the search budget"
        data = hit
    else:
        data = load_input(args.input)
    setup = setup_from(data, args.field_ext)
    return _certificate_result(certify_a2a1(setup), args.command)


def cmd_height(args) -> tuple[int, dict, str]:
    setup = setup_from(load_input(args.input), args.field_ext)
    if setup.model is None:
        raise HypothesisError("heights need A_n or D4 singularities")
    rows, text, sections = [], [], []
    ok = True
    for L, cd in setup.enumeration.exact:
        h, cls, how = measured_class(setup, L)
        geo = geometric_class(setup, cd)
        ok = ok and cls == geo
        rows.append({"line": L.to_json(), "kind": cd.kind, "height": format_scalar(h),
                     "measured_by": how, "class": str(cls), "geometric": str(geo),
                     "agree": cls == geo})
        text.append(f"{format_scalar(h):>5s}  {str(cls):32s} geometric: {geo}"
                    f"{'' if cls == geo else '  MISMATCH'}")
        if how == "lift":
            sections.append(line_to_sections(setup.E, setup.F, L)[0])
    out = {"setup": setup.to_json(), "fibers": [f.to_json() for f in setup.model.fibers],
           "sections": rows}
    if args.gram:
        G = setup.model.gram(sections)
        out["gram"] = matrix_json(G)
        text.append(f"Gram matrix of the {len(sections)} rational line-sections has "
                    f"determinant {format_scalar(det(G)) if G else '1'}")
    return (EXIT_OK if ok else EXIT_FAIL), out, "\n".join(text)


COMMANDS = {
    "analyze": cmd_analyze,
    "bitangents": cmd_bitangents,
    "sum3": cmd_certify_main,
    "height": cmd_height,
    "certify-main": cmd_certify_main,
    "certify-harris": cmd_certify_harris,
    "certify-a2a1": cmd_certify_a2a1,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", default="-",
                        help="quartic JSON file, '-' for stdin, or fixture:NAME")
    common.add_argument("--field-ext", type=int, default=None, metavar="D",
                        help="permit the single extension Q(sqrt D)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--output", "-o", help="write the JSON result here")
    common.add_argument("--json", action="store_true", help="print JSON instead of a summary")

    p = argparse.ArgumentParser(prog="mwlq", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="singularities and catalog lattice")
    sub.add_parser("bitangents", parents=[common], help="enumerate weak-bitangent lines")
    for name in ("sum3", "certify-main"):
        s = sub.add_parser(name, parents=[common], help="certify the conic from three lines")
        s.add_argument("--line", action="append", help="line coefficients lT,lX,lZ (x3)")
        s.add_argument("--coords", choices=("normal", "source"), default="source",
                       help="coordinates of --line (default: the input's)")
        s.add_argument("--signs", help="lift signs, e.g. +,+,-")
    h = sub.add_parser("height", parents=[common], help="heights of weak-bitangent sections")
    h.add_argument("--gram", action="store_true", help="also print the Gram matrix")
    c = sub.add_parser("certify-harris", parents=[common], help="four bitangents on a conic")
    c.add_argument("--variant", required=True, choices=("two-conics", "three-nodes",
                                                         "triple-point"))
    a = sub.add_parser("certify-a2a1", parents=[common], help="the A2+A1 six-point conics")
    a.add_argument("--search", action="store_true",
                   help="search for a fresh fixture (seeded) instead of reading input")
    return p


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        code, out, text = COMMANDS[args.command](args)
    except (InputError, HypothesisError, NormalizationError, QuarticError, DivisorError,
            FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload = dumps(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    print(payload if args.json else text, end="" if args.json else "\n")
    return code


def main() -> None:
    sys.exit(run_cli())
