import os
import sys

import hypothesis
import hypothesis.strategies as st
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from periodic_rigidity.gain_graph import EdgeOrbit, QuotientGraph  # noqa: E402

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def graph(d, n, edges, weights=None):
    """Shorthand: edges as (tail, head, gain) or (tail, head, gain, q_tail, q_head)."""
    return QuotientGraph(d, n, tuple(EdgeOrbit(*e) for e in edges), weights)


@st.composite
def quotient_graphs(draw, d=None, n_max=4, m_max=8, box=3, loops=True):
    d = draw(st.integers(1, 3)) if d is None else d
    n = draw(st.integers(1, n_max))
    m = draw(st.integers(0, m_max))
    edges = []
    for _ in range(m):
        u = draw(st.integers(1, n))
        v = draw(st.integers(1, n)) if loops or n == 1 else draw(st.integers(1, n).filter(lambda x: x != u))
        gain = tuple(draw(st.lists(st.integers(-box, box), min_size=d, max_size=d)))
        if u == v and not any(gain):
            gain = (1,) + gain[1:]
        edges.append(EdgeOrbit(u, v, gain))
    return QuotientGraph(d, n, tuple(edges))


@pytest.fixture
def rigid_d2n2():
    """Two parallel edges, one loop per vertex and three more edges."""
    return graph(2, 2, [
        (1, 2, (0, 0)), (1, 2, (1, 0)),
        (1, 1, (1, 0)), (2, 2, (0, 1)),
        (1, 2, (0, 1)), (1, 1, (1, 1)), (2, 2, (1, -1)),
    ])


ACCEPTANCE_LINES: list = []


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append((number, line))
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
