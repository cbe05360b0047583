"""Tests for multigraphs, cut spaces and cycle spaces."""

import numpy as np
import pytest

from trirep.codealg import LinearCode, coordinate_load, even_weight_code, find_two_basis
from trirep.exceptions import (
    DependentBasisError,
    EmptyGraphError,
    FormatError,
    NotATwoBasisError,
)
from trirep.gf2core import BitVec
from trirep.graphspace import (
    MultiGraph,
    complete_bipartite_graph,
    complete_graph,
    cut_space,
    cycle_space,
    format_graph,
    fundamental_cycles,
    graph_from_two_basis,
    incidence_vector,
    parse_graph,
    random_multigraph,
    read_graph,
    spanning_forest,
    write_graph,
)


def v(text):
    return BitVec.from_string(text)


# Test incidence vectors ignore loops
def test_incidence_vector_loops():
    g = MultiGraph(["a", "b"], [("a", "b"), ("a", "a"), ("a", "b")])
    assert incidence_vector(g, "a") == v("101")
    assert incidence_vector(g, "b") == v("101")


# Test the cut space of a triangle
def test_cut_space_triangle():
    code, raw = cut_space(complete_graph(3))
    assert code == even_weight_code(3)
    assert raw == [v("110"), v("101")]


# Test the cut space needs a vertex
def test_cut_space_empty_graph():
    with pytest.raises(EmptyGraphError):
        cut_space(MultiGraph())


# Test the cut space of a disconnected graph
def test_cut_space_disconnected():
    g = MultiGraph(["1", "2", "3", "4"], [("1", "2"), ("3", "4")])
    code, raw = cut_space(g)
    assert len(raw) == 3
    assert code.dim == 2


# Test the BFS spanning forest and the cycle space
def test_cycle_space():
    g = complete_graph(3)
    assert spanning_forest(g) == {1: ("1", "2"), 2: ("1", "3")}
    assert fundamental_cycles(g) == [v("111")]

    k4 = cycle_space(complete_graph(4))
    assert k4.dim == 6 - 4 + 1


# Test loops and parallel edges in the cycle space
def test_cycle_space_loops_and_parallels():
    g = MultiGraph(["1", "2"], [("1", "2"), ("1", "2"), ("2", "2")])
    cycles = fundamental_cycles(g)
    assert cycles == [v("110"), v("001")]
    assert cycle_space(g).dim == 2


# Test the graph built from a 2-basis
def test_graph_from_two_basis():
    g = graph_from_two_basis([v("0110"), v("1010")])
    assert g.vertices == ["v1", "v2", "u"]
    assert g.edges == [("v2", "u"), ("v1", "u"), ("v1", "v2"), ("u", "u")]
    code, _ = cut_space(g)
    assert code == LinearCode(4, [v("0110"), v("1010")])


# Test graph_from_two_basis input checks
def test_graph_from_two_basis_errors():
    with pytest.raises(NotATwoBasisError):
        graph_from_two_basis([v("100"), v("110"), v("101")])
    with pytest.raises(DependentBasisError):
        graph_from_two_basis([v("110"), v("110")])
    assert graph_from_two_basis([], length=2).edges == [("u", "u"), ("u", "u")]


# Test the graph correspondence round trip on random multigraphs
def test_cut_space_round_trip():
    rng = np.random.default_rng(11)
    for _ in range(25):
        g = random_multigraph(int(rng.integers(1, 7)), int(rng.integers(0, 11)), rng)
        code, raw = cut_space(g)
        report = find_two_basis(code)
        assert report.found
        rebuilt, _ = cut_space(graph_from_two_basis(report.basis, code.length))
        assert rebuilt == code


# Test the graph text format
def test_graph_format(tmp_path):
    g = parse_graph("# triangle\nV 3\n1 2\n1 3\n2 3\n")
    assert g == complete_graph(3)
    assert format_graph(g) == "V 3\n1 2\n1 3\n2 3\n"

    path = tmp_path / "g.txt"
    write_graph(graph_from_two_basis([v("11")]), path)
    back = read_graph(path)
    assert back.vertices == ["1", "2"]
    assert back.edges == [("1", "2"), ("1", "2")]


# Test graph parse errors
def test_graph_parse_errors():
    with pytest.raises(FormatError):
        parse_graph("1 2\n")
    with pytest.raises(FormatError):
        parse_graph("V 2\n1 3\n")
    with pytest.raises(FormatError):
        parse_graph("")


# Test the cycle space is the orthogonal complement of the cut space
def test_cut_and_cycle_spaces_are_complements():
    rng = np.random.default_rng(5)
    graphs = [complete_graph(4), complete_graph(5), complete_bipartite_graph(3, 3)]
    graphs += [
        random_multigraph(int(rng.integers(1, 7)), int(rng.integers(0, 12)), rng)
        for _ in range(20)
    ]
    for g in graphs:
        cut, raw = cut_space(g)
        cycles = cycle_space(g)
        assert cut.dim + cycles.dim == g.n_edges
        for a in cut.basis:
            for b in cycles.basis:
                assert a.dot(b) == 0
        # each edge meets at most two of the raw vertex generators
        assert all(load <= 2 for load in coordinate_load(raw, g.n_edges))
