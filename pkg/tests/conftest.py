from __future__ import annotations

import pytest

from laf import evaluate, parse_kb
from laf.data import path, read

NINE_UNCHALLENGED = {
    "~physical_imp(cp)",
    "edu_health_child(cp)",
    "genere_child(cp)",
    "rsn_exp_life(cp)",
    "~steril(cp)",
    "n2",
    "n3",
    "r1",
    "r2",
}


@pytest.fixture(scope="session")
def fertility_path() -> str:
    return path("fertility.laf")


@pytest.fixture(scope="session")
def fertility_kb():
    return parse_kb(read("fertility.laf"), "fertility.laf")


@pytest.fixture(scope="session")
def fertility(fertility_kb):
    return evaluate(fertility_kb)


@pytest.fixture(scope="session")
def fertility_off(fertility_kb):
    return evaluate(fertility_kb, rules_as_premises=False)


_criteria: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        criterion = name.split("_")[2] if name.startswith("test_criterion_") else name
        _criteria.setdefault(criterion, []).append(f"{report.outcome.upper():7} {name}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_criteria, key=lambda c: (len(c), c)):
        lines = _criteria[criterion]
        verdict = "PASS" if all(l.startswith("PASSED") for l in lines) else "FAIL"
        terminalreporter.write_line(f"criterion {criterion}: {verdict}")
        for line in lines:
            terminalreporter.write_line(f"    {line}")
