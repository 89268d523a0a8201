"""
Uniform hypergraphs, list assignments and edge colorings
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import structlog

from src.core.exceptions import HostMismatchError, InvalidInputError

logger = structlog.get_logger()

Edge = Tuple[int, ...]


def canonical_edge(vertices: Iterable[int]) -> Edge:
    """Sort an edge's vertices into canonical order"""
    return tuple(sorted(vertices))


@dataclass(frozen=True)
class Hypergraph:
    """An l-uniform edge set on the vertices 0..n-1"""

    uniformity: int
    vertex_count: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.uniformity < 1:
            raise InvalidInputError("uniformity must be positive")
        if self.vertex_count < 0:
            raise InvalidInputError("vertex count must be non-negative")

        normalized = sorted({canonical_edge(e) for e in self.edges})
        if len(normalized) != len(self.edges):
            raise InvalidInputError("duplicate edges")
        for edge in normalized:
            if len(set(edge)) != self.uniformity or len(edge) != self.uniformity:
                raise InvalidInputError(
                    f"edge {edge} does not have {self.uniformity} distinct vertices"
                )
            if edge[0] < 0 or edge[-1] >= self.vertex_count:
                raise InvalidInputError(
                    f"edge {edge} leaves the vertex range [0, {self.vertex_count})"
                )
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        """Position of every edge in the canonical edge order"""
        return {edge: i for i, edge in enumerate(self.edges)}

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def covered_vertices(self) -> Tuple[int, ...]:
        """Vertices that lie in at least one edge"""
        return tuple(sorted({v for edge in self.edges for v in edge}))

    @cached_property
    def incidence(self) -> Dict[int, Tuple[Edge, ...]]:
        """Edges at each vertex"""
        at: Dict[int, List[Edge]] = {v: [] for v in range(self.vertex_count)}
        for edge in self.edges:
            for v in edge:
                at[v].append(edge)
        return {v: tuple(edges) for v, edges in at.items()}

    def degree(self, vertex: int) -> int:
        return len(self.incidence.get(vertex, ()))

    @property
    def max_degree(self) -> int:
        return max((len(e) for e in self.incidence.values()), default=0)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return canonical_edge(vertices) in self.edge_set

    def is_complete(self) -> bool:
        return self.edge_count == _binomial(self.vertex_count, self.uniformity)

    def subgraph(self, edges: Iterable[Edge]) -> "Hypergraph":
        """Spanning subgraph on the same vertex set"""
        return Hypergraph(self.uniformity, self.vertex_count, tuple(edges))

    def relabel(self, mapping: Mapping[int, int], vertex_count: int) -> "Hypergraph":
        return Hypergraph(
            self.uniformity,
            vertex_count,
            tuple(canonical_edge(mapping[v] for v in e) for e in self.edges),
        )


def _binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def complete_hypergraph(n: int, uniformity: int) -> Hypergraph:
    """
    Build K_n^{(l)}

    Args:
        n: Vertex count
        uniformity: Edge size l; hosts with n < l have no edges

    Returns:
        Hypergraph with every l-subset of [n] as an edge
    """
    if uniformity == 0:
        raise InvalidInputError("uniformity 0 is not supported")
    return Hypergraph(uniformity, n, tuple(combinations(range(n), uniformity)))


def clique(r: int, uniformity: int = 2) -> Hypergraph:
    """The pattern K_r^{(l)}"""
    return complete_hypergraph(r, uniformity)


def star(r: int) -> Hypergraph:
    """The pattern K_{1,r} with centre 0"""
    if r < 1:
        raise InvalidInputError("a star needs at least one edge")
    return Hypergraph(2, r + 1, tuple((0, leaf) for leaf in range(1, r + 1)))


def matching(r: int) -> Hypergraph:
    """The pattern rK_2"""
    if r < 1:
        raise InvalidInputError("a matching needs at least one edge")
    return Hypergraph(2, 2 * r, tuple((2 * i, 2 * i + 1) for i in range(r)))


@dataclass(frozen=True)
class ListAssignment:
    """Lists of exactly k colors, aligned with the host's canonical edge order"""

    host: Hypergraph
    k: int
    lists: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInputError("list size must be positive")
        if len(self.lists) != self.host.edge_count:
            raise InvalidInputError(
                f"{len(self.lists)} lists for {self.host.edge_count} edges"
            )
        normalized = []
        for edge, colors in zip(self.host.edges, self.lists):
            palette = tuple(sorted(set(colors)))
            if len(palette) != self.k or len(palette) != len(colors):
                raise InvalidInputError(
                    f"list of edge {edge} does not hold {self.k} distinct colors"
                )
            if palette[0] < 0:
                raise InvalidInputError(f"negative color on edge {edge}")
            normalized.append(palette)
        object.__setattr__(self, "lists", tuple(normalized))

    @classmethod
    def from_mapping(
        cls, host: Hypergraph, lists: Mapping[Edge, Sequence[int]], k: Optional[int] = None
    ) -> "ListAssignment":
        missing = [e for e in host.edges if e not in lists]
        if missing:
            raise InvalidInputError(f"no list for edge {missing[0]}")
        ordered = tuple(tuple(lists[e]) for e in host.edges)
        if k is None:
            k = len(ordered[0]) if ordered else 1
        return cls(host, k, ordered)

    @classmethod
    def uniform(cls, host: Hypergraph, colors: Sequence[int]) -> "ListAssignment":
        """The same list on every edge; list colorings are then ordinary colorings"""
        palette = tuple(sorted(colors))
        return cls(host, len(palette), tuple(palette for _ in host.edges))

    def list_for(self, edge: Edge) -> Tuple[int, ...]:
        return self.lists[self.host.edge_index[canonical_edge(edge)]]

    @cached_property
    def universe(self) -> Tuple[int, ...]:
        return tuple(sorted({c for palette in self.lists for c in palette}))

    @cached_property
    def edges_with_color(self) -> Dict[int, Tuple[Edge, ...]]:
        """Host edges whose list contains each universe color"""
        holders: Dict[int, List[Edge]] = {}
        for edge, palette in zip(self.host.edges, self.lists):
            for c in palette:
                holders.setdefault(c, []).append(edge)
        return {c: tuple(edges) for c, edges in holders.items()}

    def is_uniform(self) -> bool:
        return len(set(self.lists)) <= 1

    def as_mapping(self) -> Dict[Edge, Tuple[int, ...]]:
        return dict(zip(self.host.edges, self.lists))


@dataclass(frozen=True)
class EdgeColoring:
    """A single color on every host edge, aligned with the canonical edge order"""

    host: Hypergraph
    colors: Tuple[int, ...]

    def __post_init__(self):
        if len(self.colors) != self.host.edge_count:
            raise InvalidInputError(
                f"{len(self.colors)} colors for {self.host.edge_count} edges"
            )
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))

    @classmethod
    def from_mapping(cls, host: Hypergraph, colors: Mapping[Edge, int]) -> "EdgeColoring":
        missing = [e for e in host.edges if e not in colors]
        if missing:
            raise InvalidInputError(f"edge {missing[0]} is not colored")
        return cls(host, tuple(colors[e] for e in host.edges))

    def color_of(self, edge: Edge) -> int:
        return self.colors[self.host.edge_index[canonical_edge(edge)]]

    @cached_property
    def classes(self) -> Dict[int, Tuple[Edge, ...]]:
        """Edges of each color present in the coloring"""
        grouped: Dict[int, List[Edge]] = {}
        for edge, c in zip(self.host.edges, self.colors):
            grouped.setdefault(c, []).append(edge)
        return {c: tuple(edges) for c, edges in sorted(grouped.items())}

    def color_degree(self, vertex: int, color: int) -> int:
        return sum(1 for e in self.classes.get(color, ()) if vertex in e)

    def max_color_degree(self) -> int:
        """Largest number of same-colored edges at one vertex"""
        best = 0
        for edges in self.classes.values():
            counts: Dict[int, int] = {}
            for e in edges:
                for v in e:
                    counts[v] = counts.get(v, 0) + 1
            best = max(best, max(counts.values(), default=0))
        return best

    def as_mapping(self) -> Dict[Edge, int]:
        return dict(zip(self.host.edges, self.colors))


@dataclass(frozen=True)
class Embedding:
    """A monochromatic copy of a pattern inside a colored host"""

    pattern: Hypergraph
    vertex_map: Tuple[Tuple[int, int], ...]
    color: int
    image_edges: Tuple[Edge, ...] = field(default=(), compare=False)

    def __post_init__(self):
        mapping = dict(self.vertex_map)
        image = tuple(canonical_edge(mapping[v] for v in e) for e in self.pattern.edges)
        object.__setattr__(self, "image_edges", image)

    @property
    def mapping(self) -> Dict[int, int]:
        return dict(self.vertex_map)

    def is_valid(self, coloring: EdgeColoring) -> bool:
        """Injective, and every image edge is a host edge of the embedding's color"""
        mapping = self.mapping
        if set(mapping) != set(range(self.pattern.vertex_count)):
            return False
        if len(set(mapping.values())) != len(mapping):
            return False
        host = coloring.host
        return all(
            host.has_edge(e) and coloring.color_of(e) == self.color
            for e in self.image_edges
        )


def verify_list_coloring(lists: ListAssignment, coloring: EdgeColoring) -> bool:
    """
    Check that a coloring picks every edge's color from its list

    Args:
        lists: The list assignment
        coloring: Coloring of the same host

    Returns:
        True iff c(e) is in L_e for every edge
    """
    if lists.host != coloring.host:
        raise HostMismatchError("list assignment and coloring live on different hosts")
    return all(c in palette for c, palette in zip(coloring.colors, lists.lists))


def is_proper(coloring: EdgeColoring) -> bool:
    """No two edges sharing a vertex share a color"""
    return coloring.max_color_degree() <= 1
