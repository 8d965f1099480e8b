import numpy as np
import pytest

from ncm import CognitiveMap, load_eis_map

_criteria = {}


@pytest.fixture(scope="session")
def eis():
    return load_eis_map()


def random_map(rng: np.random.Generator, n: int, density: float = 0.3, p_indet: float = 0.15) -> CognitiveMap:
    """Valid random map: weights on the 0.1 grid in [-1, 1] minus zero, some I edges."""
    ids = [f"c{i}" for i in range(n)]
    grid = [w / 10 for w in range(-10, 11) if w != 0]
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                w = "I" if rng.random() < p_indet else grid[rng.integers(len(grid))]
                edges.append((ids[i], ids[j], w))
    rng.shuffle(edges)
    return CognitiveMap.from_edges(f"random{n}", [(c, f"Concept {c}") for c in ids], edges)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _markers.get(report.nodeid)
    if marker is None:
        return
    number, title = marker
    ok = _criteria.get(number, (title, True))[1] and report.passed
    _criteria[number] = (title, ok)


_markers = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _markers[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
