import functools

import pytest
from hypothesis import strategies as st

from nusubdiv.path import LatticePath, index_path, paths_up_to

ACCEPTANCE_LINES = []


def lattice_paths(min_size=0, max_size=8):
    return st.text(alphabet="EN", min_size=min_size, max_size=max_size).map(LatticePath)


@functools.lru_cache(maxsize=None)
def indexed(word):
    return index_path(word)


def all_words(max_size):
    return [nu.steps for nu in paths_up_to(max_size)]


@pytest.fixture
def neene():
    return indexed("NEENE")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
