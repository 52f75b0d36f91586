"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

import functools

import pytest

from mwlq.certify.cli import setup_from
from mwlq.certify.fixtures import fixture_input

CRITERIA = {
    1: "two-conics: 4 bitangents, Veronese rank 5, smooth conic, < 5 s",
    2: "three-nodes and triple-point: smooth conics through 8 points, < 10 s",
    3: "b^2 - f - b0^2 (x - x4) a = 0 and line-section degree bounds on 50 fixtures",
    4: "sum3 agrees with chord-tangent addition on 100 divisors over 10 curves",
    5: "height test vector 1/3 and contributions 1/2, 2/3, 1/3",
    6: "bitangent-difference Gram: det 1/8, diagonal {1, 1, 1}",
    7: "height classifier round-trip on every fixture line",
    8: "A2+A1: each pair (L_i, L_j) has a unique (M_a, M_b) and a conic",
    9: "group-law properties and theta parity on every computed combination",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        if report.skipped:
            reason = report.longrepr[2] if isinstance(report.longrepr, tuple) else ""
            _outcomes.setdefault(n, []).append(("skipped", reason))
        else:
            _outcomes.setdefault(n, []).append((report.outcome, ""))


def _verdict(results: list[tuple[str, str]]) -> tuple[str, str]:
    if any(o == "failed" for o, _ in results):
        return "FAIL", ""
    if all(o == "skipped" for o, _ in results):
        return "SKIP", results[0][1]
    return "PASS", ""


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n, title in CRITERIA.items():
        if n not in _outcomes:
            terminalreporter.write_line(f"criterion {n}: NOT RUN  {title}")
            continue
        verdict, reason = _verdict(_outcomes[n])
        line = f"criterion {n}: {verdict}  {title}"
        if reason:
            line += f"  ({reason})"
        terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def _setup(name: str):
    return setup_from(fixture_input(name))


@pytest.fixture(scope="session")
def fixture_setup():
    """Prepared QuarticSetup of a shipped fixture, cached per session."""
    return _setup
