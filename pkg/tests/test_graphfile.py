from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import quotient_graphs
from periodic_rigidity.gain_graph import EdgeOrbit
from periodic_rigidity.graphfile import GraphFile, GraphFileError, format_graph_file, parse_graph_file

SAMPLE = """# two bodies
dimension 2
vertices 2
weights 2 1
lattice 1 0
lattice 1/2 3
meta note hello world
edge 1 2 gain 1 -1 q_tail 0 1/3 q_head -5/2 0 id a
edge 2 2 gain 0 1
"""


def test_parse_sample():
    gf = parse_graph_file(SAMPLE)
    g = gf.graph
    assert (g.dimension, g.n_vertices, g.m, g.weights) == (2, 2, 2, (2, 1))
    assert gf.lattice == ((1, 0), (Fraction(1, 2), 3))
    assert gf.meta == {"note": "hello world"}
    e = g.edges[0]
    assert e.q_tail == (0, Fraction(1, 3)) and e.q_head == (Fraction(-5, 2), 0) and e.id == "a"


def test_round_trip_is_byte_exact():
    text = format_graph_file(parse_graph_file(SAMPLE))
    assert format_graph_file(parse_graph_file(text)) == text
    assert text == SAMPLE.split("\n", 1)[1]  # identical apart from the comment line


@given(quotient_graphs(m_max=6), st.lists(st.fractions(max_denominator=9), min_size=6, max_size=6))
def test_round_trip_graphs(g, qs):
    d = g.dimension
    edges = []
    for k, e in enumerate(g.edges):
        if k % 2:
            q = tuple(qs[:d])
            e = EdgeOrbit(e.tail, e.head, e.gain, q, tuple(x + 1 for x in q), f"e{k}")
        edges.append(e)
    g = g.with_edges(edges)
    text = format_graph_file(g)
    assert parse_graph_file(text).graph == g
    assert format_graph_file(parse_graph_file(text)) == text


@pytest.mark.parametrize("text, line, field", [
    ("dimension 2\nvertices 1\nedge 1 1 gain 1 0 0\n", 3, "edge[0].gain"),
    ("dimension 2\nvertices 1\nedge 1 1 gain 1 x\n", 3, "edge[0].gain"),
    ("dimension 2\nvertices 1\nedge 1 1\n", 3, "edge[0].gain"),
    ("dimension 2\nvertices 1\nedge 1 1 gain 1 0 q_tail 0 0\n", 3, "edge[0]"),
    ("dimension 2\nvertices 1\nedge 1 1 gain 1 0 q_tail 0 1/0 q_head 0 0\n", 3, "edge[0].q_tail"),
    ("dimension two\n", 1, "dimension"),
    ("dimension 2\nvertices 1\nbogus 3\n", 3, None),
    ("vertices 1\n", None, "dimension"),
])
def test_diagnostics(text, line, field):
    with pytest.raises(GraphFileError) as exc:
        parse_graph_file(text)
    assert exc.value.line == line and exc.value.field == field


def test_semantic_errors_surface():
    with pytest.raises(GraphFileError, match="out of range"):
        parse_graph_file("dimension 2\nvertices 1\nedge 1 2 gain 1 0\n")
    with pytest.raises(GraphFileError, match="lattice"):
        parse_graph_file("dimension 2\nvertices 1\nlattice 1 0\n")


def test_graphfile_holds_extras():
    gf = parse_graph_file("dimension 1\nvertices 1\n")
    assert isinstance(gf, GraphFile) and gf.lattice is None and gf.graph.m == 0
