from __future__ import annotations

import pytest

from khflow import corpus
from khflow.homology import homology
from khflow.khcomplex import differential


@pytest.fixture(scope="session")
def diagrams():
    return {name: corpus.load(name) for name in corpus.names()}


@pytest.fixture(scope="session")
def tables(diagrams):
    return {name: homology(differential(d)) for name, d in diagrams.items()}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS, report_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(report_line(n))
