"""
Galvin's list edge coloring of bipartite graphs
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Set, Tuple

import networkx as nx
from networkx.algorithms import bipartite
import structlog

from src.core.exceptions import (
    HostMismatchError,
    InternalDefectError,
    InvalidInputError,
    ListTooShortError,
)
from src.core.hypergraph import Edge, EdgeColoring, Hypergraph, ListAssignment, is_proper

logger = structlog.get_logger()


@dataclass(frozen=True)
class BipartiteGraph:
    """A graph with a fixed bipartition; edges are stored as (x, y) with x in X"""

    x_part: FrozenSet[int]
    y_part: FrozenSet[int]
    edges: Tuple[Tuple[int, int], ...]
    vertex_count: int

    def __post_init__(self):
        if self.x_part & self.y_part:
            raise InvalidInputError("bipartition sides overlap")
        for x, y in self.edges:
            if x not in self.x_part or y not in self.y_part:
                raise InvalidInputError(f"edge ({x}, {y}) does not cross the bipartition")

    @classmethod
    def from_hypergraph(cls, graph: Hypergraph) -> "BipartiteGraph":
        """Two-color the graph's components; the side holding the smaller vertex becomes X"""
        if graph.uniformity != 2:
            raise InvalidInputError("bipartite graphs have uniformity 2")
        nxg = nx.Graph()
        nxg.add_edges_from(graph.edges)
        try:
            sides = bipartite.color(nxg)
        except nx.NetworkXError as exc:
            raise InvalidInputError("graph is not bipartite") from exc

        x_part: Set[int] = set()
        y_part: Set[int] = set()
        for component in nx.connected_components(nxg):
            first = min(component)
            for v in component:
                (x_part if sides[v] == sides[first] else y_part).add(v)
        edges = tuple(sorted((u, v) if u in x_part else (v, u) for u, v in graph.edges))
        return cls(frozenset(x_part), frozenset(y_part), edges, graph.vertex_count)

    @cached_property
    def max_degree(self) -> int:
        degree: Dict[int, int] = {}
        for x, y in self.edges:
            degree[x] = degree.get(x, 0) + 1
            degree[y] = degree.get(y, 0) + 1
        return max(degree.values(), default=0)

    def as_hypergraph(self) -> Hypergraph:
        return Hypergraph(2, self.vertex_count, self.edges)


def konig_edge_coloring(graph: BipartiteGraph) -> Dict[Tuple[int, int], int]:
    """
    Proper edge coloring of a bipartite graph with max-degree many colors

    Each edge takes the smallest color a free at its X end. When a is busy at the Y end,
    the a/b alternating path leaving Y is flipped first, b being free at Y.
    """
    at: Dict[int, Dict[int, int]] = {}
    phi: Dict[Tuple[int, int], int] = {}

    def free(v: int) -> int:
        used = at.get(v, {})
        c = 0
        while c in used:
            c += 1
        return c

    def key(u: int, v: int) -> Tuple[int, int]:
        return (u, v) if u in graph.x_part else (v, u)

    for x, y in graph.edges:
        a = free(x)
        if a in at.get(y, {}):
            b = free(y)
            path: List[Tuple[int, int, int]] = []
            v, c = y, a
            while c in at.get(v, {}):
                w = at[v][c]
                path.append((v, w, c))
                v, c = w, (b if c == a else a)
            for u, w, c in path:
                del at[u][c]
                del at[w][c]
            for u, w, c in path:
                swapped = b if c == a else a
                at.setdefault(u, {})[swapped] = w
                at.setdefault(w, {})[swapped] = u
                phi[key(u, w)] = swapped
        at.setdefault(x, {})[a] = y
        at.setdefault(y, {})[a] = x
        phi[(x, y)] = a

    return phi


def _stable_kernel(
    candidates: List[Tuple[int, int]], phi: Dict[Tuple[int, int], int]
) -> List[Tuple[int, int]]:
    """
    Kernel of the line-graph orientation restricted to the candidate edges

    X vertices prefer larger phi and propose in that order; Y vertices keep the proposal
    with the smallest phi. The stable matching produced is the kernel.
    """
    proposals: Dict[int, List[Tuple[int, int]]] = {}
    for edge in candidates:
        proposals.setdefault(edge[0], []).append(edge)
    for x in proposals:
        proposals[x].sort(key=lambda e: -phi[e])

    held: Dict[int, Tuple[int, int]] = {}
    cursor = {x: 0 for x in proposals}
    queue = deque(sorted(proposals))
    while queue:
        x = queue.popleft()
        if cursor[x] >= len(proposals[x]):
            continue
        edge = proposals[x][cursor[x]]
        cursor[x] += 1
        y = edge[1]
        current = held.get(y)
        if current is None:
            held[y] = edge
        elif phi[edge] < phi[current]:
            held[y] = edge
            queue.append(current[0])
        else:
            queue.append(x)
    return sorted(held.values())


def galvin_color(graph: BipartiteGraph, lists: ListAssignment) -> EdgeColoring:
    """
    Proper list edge coloring of a bipartite graph from lists of size at least its max degree

    Args:
        graph: Bipartite graph G
        lists: List assignment on G's edges

    Returns:
        Proper coloring with c(e) in L_e
    """
    host = graph.as_hypergraph()
    if lists.host != host:
        raise HostMismatchError("list assignment is not on the bipartite graph's edges")
    if lists.k < graph.max_degree:
        raise ListTooShortError(f"lists of size {lists.k} below max degree {graph.max_degree}")

    phi = konig_edge_coloring(graph)
    remaining: Dict[Tuple[int, int], Set[int]] = {
        (x, y): set(lists.list_for((x, y))) for x, y in graph.edges
    }
    colors: Dict[Edge, int] = {}

    for color in lists.universe:
        candidates = [e for e, pal in remaining.items() if color in pal]
        if not candidates:
            continue
        kernel = _stable_kernel(candidates, phi)
        for edge in kernel:
            colors[tuple(sorted(edge))] = color
            del remaining[edge]
        for edge in candidates:
            if edge in remaining:
                remaining[edge].discard(color)

    if remaining:
        logger.error("Galvin coloring left edges uncolored", uncolored=len(remaining))
        raise InternalDefectError("Galvin kernel coloring failed on valid input")

    coloring = EdgeColoring.from_mapping(host, colors)
    if not is_proper(coloring):
        logger.error("Galvin coloring is not proper")
        raise InternalDefectError("Galvin kernel coloring produced an improper coloring")
    logger.debug("Galvin coloring complete", edges=host.edge_count, max_degree=graph.max_degree)
    return coloring


def galvin_color_piece(piece: Hypergraph, lists: ListAssignment) -> EdgeColoring:
    """Galvin coloring of a bipartite piece given as a hypergraph"""
    return galvin_color(BipartiteGraph.from_hypergraph(piece), lists)


def is_bipartite(graph: Hypergraph) -> bool:
    nxg = nx.Graph()
    nxg.add_edges_from(graph.edges)
    return bipartite.is_bipartite(nxg)


def restrict_lists(lists: ListAssignment, piece: Hypergraph) -> ListAssignment:
    """Lists of a host restricted to the edges of a spanning piece"""
    return ListAssignment(piece, lists.k, tuple(lists.list_for(e) for e in piece.edges))
