"""Command line: subcommands, JSON output and exit codes."""

import io
import json

import pytest

from mwlq.arith.field import format_scalar
from mwlq.certify.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, run_cli
from mwlq.certify.fixtures import fixture_input


def _line_arg(L) -> str:
    return "--line=" + ",".join(format_scalar(c) for c in L.coeffs)


def _source_lines(setup, kinds=("bitangent",)):
    return [setup.norm.line_to_old(L).canonical() for L, cd in setup.enumeration.exact
            if cd.kind in kinds]


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_analyze_reports_lattice(capsys):
    assert run_cli(["analyze", "fixture:two-conics"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "row 8" in out and "A1* + A1* + A1* + Z/2" in out


def test_analyze_smooth_quartic(tmp_path, capsys):
    doc = {"coefficients": {"400": "1", "040": "1", "004": "-1"}, "field_ext": 0}
    path = tmp_path / "fermat.json"
    path.write_text(json.dumps(doc))
    assert run_cli(["analyze", str(path)]) == EXIT_OK
    assert "no singularities" in capsys.readouterr().out


def test_bitangents_json(capsys):
    assert run_cli(["bitangents", "fixture:triple-point", "--json"]) == EXIT_OK
    data = _json_out(capsys)
    assert len(data["lines"]) == 7 and data["numeric_only"] == []


@pytest.mark.parametrize("variant, name", [
    ("two-conics", "two-conics"), ("three-nodes", "three-nodes"),
    ("triple-point", "triple-point")])
def test_certify_harris(variant, name, capsys):
    assert run_cli(["certify-harris", f"fixture:{name}", "--variant", variant, "--json"]) == EXIT_OK
    data = _json_out(capsys)
    assert data["verdict"] == "pass"
    assert data["conic"]["smooth"]


def test_certify_harris_wrong_variant(capsys):
    assert run_cli(["certify-harris", "fixture:two-conics", "--variant", "triple-point"]) \
        == EXIT_INPUT
    assert "D4" in capsys.readouterr().err


def test_certify_main_from_source_lines(fixture_setup, tmp_path, capsys):
    setup = fixture_setup("two-conics")
    lines = _source_lines(setup)[:3]
    out = tmp_path / "cert.json"
    argv = ["certify-main", "fixture:two-conics", *map(_line_arg, lines), "-o", str(out)]
    assert run_cli(argv) == EXIT_OK
    cert = json.loads(out.read_text())
    assert cert["status"] == "certified" and cert["verdict"] == "pass"
    assert all(cert["checks"].values())
    assert all(e["agree"] for e in cert["parity_checks"])


def test_sum3_alias_and_fixed_signs(fixture_setup, capsys):
    setup = fixture_setup("two-conics")
    lines = _source_lines(setup)[:3]
    codes = {run_cli(["sum3", "fixture:two-conics", *map(_line_arg, lines), f"--signs={s}"])
             for s in ("+,+,+", "+,+,-", "+,-,+", "-,+,+")}
    capsys.readouterr()
    assert EXIT_OK in codes and EXIT_FAIL in codes


def test_coincident_lines_rejected(fixture_setup, capsys):
    setup = fixture_setup("two-conics")
    L = _source_lines(setup)[0]
    assert run_cli(["certify-main", "fixture:two-conics", *[_line_arg(L)] * 3]) == EXIT_INPUT
    assert "distinct" in capsys.readouterr().err


def test_non_weak_bitangent_rejected(fixture_setup, capsys):
    setup = fixture_setup("two-conics")
    lines = _source_lines(setup)[:2]
    argv = ["certify-main", "fixture:two-conics", *map(_line_arg, lines), "--line=1,1,5"]
    assert run_cli(argv) == EXIT_INPUT
    assert "weak-bitangent" in capsys.readouterr().err


def test_height_command(capsys):
    assert run_cli(["height", "fixture:a2a1", "--gram", "--json"]) == EXIT_OK
    data = _json_out(capsys)
    assert len(data["sections"]) == 12
    assert all(sec["agree"] for sec in data["sections"])
    assert {f["kind"] for f in data["fibers"]} == {"I2", "I3"}
    gram = data["gram"]
    assert len(gram) == 12 and all(gram[i][i] == data["sections"][i]["height"] for i in range(12))


def test_certify_a2a1(capsys):
    assert run_cli(["certify-a2a1", "fixture:a2a1", "--json"]) == EXIT_OK
    data = _json_out(capsys)
    assert data["verdict"] == "pass" and len(data["certificates"]) == 6


def test_stdin_input(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(fixture_input("triple-point"))))
    assert run_cli(["analyze", "-"]) == EXIT_OK
    assert "D4" in capsys.readouterr().out


@pytest.mark.parametrize("content", [None, "{not json", json.dumps({"coefficients": {"5": "1"}})])
def test_bad_input_exit_code(tmp_path, content, capsys):
    path = tmp_path / "in.json"
    if content is not None:
        path.write_text(content)
    assert run_cli(["analyze", str(path)]) == EXIT_INPUT
    capsys.readouterr()


def test_unknown_fixture_and_bad_arguments(capsys):
    assert run_cli(["analyze", "fixture:nope"]) == EXIT_INPUT
    assert run_cli(["certify-harris", "fixture:two-conics", "--variant", "bogus"]) == EXIT_INPUT
    capsys.readouterr()
