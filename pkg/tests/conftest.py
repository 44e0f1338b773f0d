import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gameaxioms import Game  # noqa: E402

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = getattr(report, "criterion", None)
    if number is None:
        return
    entry = _criteria.setdefault(number[0], {"title": number[1], "outcomes": []})
    entry["outcomes"].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = (marker.args[0], marker.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        ok = entry["outcomes"] and all(o == "passed" for o in entry["outcomes"])
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {entry['title']}")


@pytest.fixture
def pd():
    """Prisoner's dilemma, actions (C, D)."""
    return Game.bimatrix([[3, 0], [4, 1]], [[3, 4], [0, 1]])


@pytest.fixture
def mp():
    """Matching pennies, player 1 wants to match."""
    return Game.bimatrix([[1, -1], [-1, 1]], [[-1, 1], [1, -1]])


@pytest.fixture
def co():
    """Battle-of-the-sexes style coordination game with two strict equilibria."""
    return Game.bimatrix([[2, 0], [0, 1]], [[1, 0], [0, 2]])
