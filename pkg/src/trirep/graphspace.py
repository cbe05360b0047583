"""Multigraphs, their cut and cycle spaces, and graphs realizing a 2-basis."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from trirep.codealg import LinearCode, code_from_rows, coordinate_load
from trirep.exceptions import (
    DependentBasisError,
    EmptyGraphError,
    FormatError,
    NotATwoBasisError,
)
from trirep.gf2core import BitVec, is_independent
from trirep.textio import read_text

# Configure logging
logger = logging.getLogger(__name__)

Edge = Tuple[str, str]


class MultiGraph:
    """
    Graph with loops and parallel edges.

    Edge ``i`` (1-based) corresponds to code coordinate ``i``. Vertex order is
    the order of insertion and decides every tie in the algorithms below.
    """

    def __init__(self, vertices: Sequence[str] = (), edges: Sequence[Edge] = ()):
        self.vertices: List[str] = []
        self._index: Dict[str, int] = {}
        self.edges: List[Edge] = []
        for v in vertices:
            self.add_vertex(v)
        for a, b in edges:
            self.add_edge(a, b)

    def add_vertex(self, label: str) -> None:
        if label in self._index:
            raise ValueError(f"duplicate vertex label {label!r}")
        self._index[label] = len(self.vertices)
        self.vertices.append(label)

    def add_edge(self, a: str, b: str) -> int:
        """Append an edge and return its 1-based index."""
        for v in (a, b):
            if v not in self._index:
                raise KeyError(f"unknown vertex {v!r}")
        self.edges.append((a, b))
        return len(self.edges)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def order(self, label: str) -> int:
        return self._index[label]

    def edge(self, i: int) -> Edge:
        return self.edges[i - 1]

    def to_networkx(self) -> nx.MultiGraph:
        """networkx view; edge keys are the 1-based edge indices."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for i, (a, b) in enumerate(self.edges, start=1):
            graph.add_edge(a, b, key=i)
        return graph

    def to_dict(self) -> Dict[str, Any]:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={len(self.vertices)}, |E|={self.n_edges})"


def incidence_vector(graph: MultiGraph, v: str) -> BitVec:
    """chi(E(v)); loops contribute nothing."""
    support = [i for i, (a, b) in enumerate(graph.edges, start=1) if a != b and v in (a, b)]
    return BitVec.from_support(graph.n_edges, support)


def cut_space(graph: MultiGraph) -> Tuple[LinearCode, List[BitVec]]:
    """
    Cut space of ``graph`` with the vertex-incidence generators.

    Returns:
        The canonical code and the raw incidence vectors of every vertex but
        the last one
    """
    if not graph.vertices:
        raise EmptyGraphError("cut space of a graph without vertices")
    raw = [incidence_vector(graph, v) for v in graph.vertices[:-1]]
    return code_from_rows(raw, graph.n_edges), raw


def spanning_forest(graph: MultiGraph) -> Dict[int, Tuple[str, str]]:
    """
    BFS spanning forest rooted at the lowest-ordered vertex of each component.

    Returns:
        Tree edge index -> (parent, child)
    """
    nxg = graph.to_networkx()
    tree: Dict[int, Tuple[str, str]] = {}
    seen = set()
    for root in graph.vertices:
        if root in seen:
            continue
        seen.add(root)
        for parent, child in nx.bfs_edges(
            nxg, root, sort_neighbors=lambda nbrs: sorted(nbrs, key=graph.order)
        ):
            key = min(nxg[parent][child])
            tree[key] = (parent, child)
            seen.add(child)
    return tree


def fundamental_cycles(graph: MultiGraph) -> List[BitVec]:
    """One cycle per non-tree edge, in edge order."""
    tree_edges = spanning_forest(graph)
    tree = nx.Graph()
    tree.add_nodes_from(graph.vertices)
    for key, (a, b) in tree_edges.items():
        tree.add_edge(a, b, key=key)

    cycles = []
    for i, (a, b) in enumerate(graph.edges, start=1):
        if i in tree_edges:
            continue
        support = {i}
        if a != b:
            path = nx.shortest_path(tree, a, b)
            support.update(tree[x][y]["key"] for x, y in zip(path, path[1:]))
        cycles.append(BitVec.from_support(graph.n_edges, support))
    return cycles


def cycle_space(graph: MultiGraph) -> LinearCode:
    """Cycle space spanned by the fundamental cycles of a BFS spanning forest."""
    cycles = fundamental_cycles(graph)
    logger.debug(f"cycle space of {graph}: {len(cycles)} fundamental cycles")
    return code_from_rows(cycles, graph.n_edges)


def graph_from_two_basis(basis: Sequence[BitVec], length: Optional[int] = None) -> MultiGraph:
    """
    Graph whose cut space is spanned by a 2-basis.

    Vertices are ``v1..vd`` for the basis vectors followed by ``u``. Edge i is
    a loop on ``u`` when no basis vector covers coordinate i, ``(v_l, u)`` when
    only ``b_l`` does, and ``(v_l, v_k)`` when both ``b_l`` and ``b_k`` do.

    Args:
        basis: Linearly independent vectors with coordinate load at most 2
        length: Code length; required when ``basis`` is empty

    Returns:
        The realizing multigraph
    """
    if length is None:
        if not basis:
            raise ValueError("length is required for an empty basis")
        length = basis[0].length
    load = coordinate_load(basis, length)
    heavy = [i + 1 for i, x in enumerate(load) if x > 2]
    if heavy:
        raise NotATwoBasisError(f"coordinates {heavy} are nonzero in more than two vectors")
    if not is_independent(list(basis)):
        raise DependentBasisError("graph_from_two_basis needs an independent basis")

    labels = [f"v{k}" for k in range(1, len(basis) + 1)]
    graph = MultiGraph(labels + ["u"])
    for i in range(1, length + 1):
        owners = [labels[k] for k, b in enumerate(basis) if b[i]]
        if not owners:
            graph.add_edge("u", "u")
        elif len(owners) == 1:
            graph.add_edge(owners[0], "u")
        else:
            graph.add_edge(owners[0], owners[1])
    return graph


# Graph families


def complete_graph(k: int) -> MultiGraph:
    labels = [str(i) for i in range(1, k + 1)]
    edges = [(labels[i], labels[j]) for i in range(k) for j in range(i + 1, k)]
    return MultiGraph(labels, edges)


def complete_bipartite_graph(a: int, b: int) -> MultiGraph:
    labels = [str(i) for i in range(1, a + b + 1)]
    edges = [(labels[i], labels[a + j]) for i in range(a) for j in range(b)]
    return MultiGraph(labels, edges)


def random_multigraph(
    n_vertices: int,
    n_edges: int,
    rng: Optional[np.random.Generator] = None,
    loops: bool = True,
) -> MultiGraph:
    """Uniform endpoints per edge; parallel edges are allowed."""
    if n_vertices < 1:
        raise EmptyGraphError("random multigraph needs at least one vertex")
    rng = rng if rng is not None else np.random.default_rng()
    labels = [str(i) for i in range(1, n_vertices + 1)]
    graph = MultiGraph(labels)
    while graph.n_edges < n_edges:
        a, b = (int(x) for x in rng.integers(0, n_vertices, size=2))
        if a == b and not loops:
            continue
        graph.add_edge(labels[a], labels[b])
    return graph


# Graph text format


def parse_graph(text: str) -> MultiGraph:
    """
    Parse "V n" followed by one "a b" line per edge.

    Vertices are the labels "1".."n"; '#' starts a comment line.
    """
    graph: Optional[MultiGraph] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if graph is None:
            if len(parts) != 2 or parts[0] != "V" or not parts[1].isdigit():
                raise FormatError(f"expected 'V n', got {line!r}", lineno)
            graph = MultiGraph([str(i) for i in range(1, int(parts[1]) + 1)])
            continue
        if len(parts) != 2:
            raise FormatError(f"expected 'a b', got {line!r}", lineno)
        try:
            graph.add_edge(parts[0], parts[1])
        except KeyError as e:
            raise FormatError(f"unknown vertex in {line!r}", lineno) from e
    if graph is None:
        raise FormatError("missing 'V n' header")
    return graph


def format_graph(graph: MultiGraph) -> str:
    """Serialize with vertices renumbered 1..n in vertex order."""
    number = {v: str(i) for i, v in enumerate(graph.vertices, start=1)}
    lines = [f"# {number[v]} = {v}" for v in graph.vertices if number[v] != v]
    lines.append(f"V {len(graph.vertices)}")
    lines.extend(f"{number[a]} {number[b]}" for a, b in graph.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> MultiGraph:
    return parse_graph(read_text(path))


def write_graph(graph: MultiGraph, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_graph(graph))
