import sys
from pathlib import Path

import pytest

from refnet import Edge, build_graph

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion, reported in the summary")
    config._criteria_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        item.config._criteria_results.append((marker.args[0], rep.outcome))


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria_results", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in results:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")


def bridge_edges():
    pairs = [("1", "2"), ("2", "3"), ("1", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("4", "6")]
    return [Edge(a, b) for a, b in pairs]


def two_cliques_edges():
    edges = []
    for off in (0, 4):
        for i in range(4):
            for j in range(i + 1, 4):
                edges.append(Edge(f"n{i + off}", f"n{j + off}"))
    edges.append(Edge("n3", "n4"))
    return edges


@pytest.fixture
def bridge():
    """Two triangles {1,2,3} and {4,5,6} joined by the bridge 3-4."""
    return build_graph(bridge_edges(), directed=False)


@pytest.fixture
def bridge_directed():
    return build_graph(bridge_edges(), directed=True)


@pytest.fixture
def two_cliques():
    return build_graph(two_cliques_edges(), directed=False)


@pytest.fixture
def golden():
    return GOLDEN
