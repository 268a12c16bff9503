from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grex.gradalg import QuiverSpec, build_algebra  # noqa: E402

FIVE = {"name": "five", "field": 0, "vertices": ["1", "2"],
        "arrows": [["a", "1", "2", 1], ["b", "2", "1", 1]],
        "relations": [[["1", ["a", "b"]]]], "poset": {"covers": [["1", "2"]]}}
DUAL = {"name": "dual", "field": 0, "vertices": ["1"], "arrows": [["x", "1", "1", 1]],
        "relations": [[["1", ["x", "x"]]]]}
CUBE = {"name": "cube", "field": 0, "vertices": ["1"], "arrows": [["x", "1", "1", 1]],
        "relations": [[["1", ["x", "x", "x"]]]]}


def algebra(d):
    return build_algebra(QuiverSpec.from_dict(d))


@pytest.fixture(scope="session")
def five():
    return algebra(FIVE)


@pytest.fixture(scope="session")
def dual_numbers():
    return algebra(DUAL)


@pytest.fixture(scope="session")
def cube():
    return algebra(CUBE)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
