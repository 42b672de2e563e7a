from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from diamondpaths.graph import Graph, build_graph  # noqa: E402

ACCEPTANCE_LINES: list[str] = []

NAMES = [f"n{i}" for i in range(8)]


@st.composite
def small_graphs(draw: st.DrawFn, min_vertices: int = 2, max_vertices: int = 8) -> Graph:
    n = draw(st.integers(min_vertices, max_vertices))
    names = NAMES[:n]
    pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(chosen, names)


@st.composite
def graph_with_pair(draw: st.DrawFn, max_vertices: int = 8) -> tuple[Graph, str, str]:
    g = draw(small_graphs(max_vertices=max_vertices))
    u, v = draw(st.lists(st.sampled_from(g.vertices), min_size=2, max_size=2, unique=True))
    return g, u, v


@pytest.fixture
def acceptance_line():
    def record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
