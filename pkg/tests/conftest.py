from __future__ import annotations

from pathlib import Path as FsPath

import pytest

from pathalgebra import Path, load_graph
from pathalgebra.algebra import LabelOfEdge, select
from pathalgebra.graph import edges_of

FIXTURES = FsPath(__file__).parent / "fixtures"
GOLDEN = FsPath(__file__).parent / "golden"


def P(text: str) -> Path:
    """Path from a comma-separated id list, e.g. ``P("n1,e1,n2")``."""
    return Path(tuple(text.split(",")))


# Knows+ paths of the social example, keyed by their reference ids.
REFERENCE = {
    "p1": P("n1,e1,n2"),
    "p2": P("n1,e1,n2,e2,n3,e3,n2"),
    "p3": P("n1,e1,n2,e2,n3"),
    "p4": P("n1,e1,n2,e2,n3,e3,n2,e2,n3"),
    "p5": P("n1,e1,n2,e4,n4"),
    "p6": P("n1,e1,n2,e2,n3,e3,n2,e4,n4"),
    "p7": P("n2,e2,n3,e3,n2"),
    "p8": P("n2,e2,n3,e3,n2,e2,n3,e3,n2"),
    "p9": P("n2,e2,n3"),
    "p10": P("n2,e2,n3,e3,n2,e2,n3"),
    "p11": P("n2,e4,n4"),
    "p12": P("n2,e2,n3,e3,n2,e4,n4"),
    "p13": P("n3,e3,n2,e4,n4"),
    "p14": P("n3,e3,n2,e2,n3,e3,n2,e4,n4"),
}

COLUMNS = {
    "WALK": [f"p{i}" for i in range(1, 15)],
    "TRAIL": ["p1", "p2", "p3", "p5", "p6", "p7", "p9", "p11", "p12", "p13"],
    "ACYCLIC": ["p1", "p3", "p5", "p9", "p11", "p13"],
    "SIMPLE": ["p1", "p3", "p5", "p7", "p9", "p11", "p13"],
    "SHORTEST": ["p1", "p3", "p5", "p7", "p9", "p11", "p13"],
}


def column(name: str) -> frozenset[Path]:
    return frozenset(REFERENCE[i] for i in COLUMNS[name])


# Rows missing from the table that the fixture nevertheless admits.
EXTRA_E3 = P("n3,e3,n2")
EXTRA_E3E2 = P("n3,e3,n2,e2,n3")


@pytest.fixture(scope="session")
def knows():
    return load_graph(FIXTURES / "knows.pg")


@pytest.fixture(scope="session")
def social():
    return load_graph(FIXTURES / "social.pg")


@pytest.fixture(scope="session")
def triangle():
    return load_graph(FIXTURES / "triangle.pg")


@pytest.fixture(scope="session")
def knows_edges(knows):
    return select(knows, LabelOfEdge(1, "Knows"), edges_of(knows))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, report_line

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(report_line(n))
