"""
Monochromatic copy detection with fast paths for stars, matchings and cliques
"""

import enum
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Collection, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import structlog

from src.core.exceptions import InvalidInputError, UniformityMismatchError
from src.core.hypergraph import Edge, EdgeColoring, Embedding, Hypergraph, canonical_edge

logger = structlog.get_logger()


class PatternShape(str, enum.Enum):
    """Pattern families with a dedicated detector"""

    STAR = "star"
    MATCHING = "matching"
    CLIQUE = "clique"
    GENERIC = "generic"


@dataclass(frozen=True)
class PatternInfo:
    shape: PatternShape
    size: int
    uniformity: int


def classify_pattern(pattern: Hypergraph) -> PatternInfo:
    """
    Recognise K_{1,r}, rK_2 and K_r^{(l)} among patterns without isolated vertices

    Args:
        pattern: Pattern hypergraph

    Returns:
        Shape tag with its size parameter r
    """
    ell = pattern.uniformity
    v = pattern.vertex_count
    e = pattern.edge_count
    spanning = len(pattern.covered_vertices) == v

    if e >= 1 and spanning and e == comb(v, ell):
        return PatternInfo(PatternShape.CLIQUE, v, ell)

    if ell == 2 and e >= 1 and spanning:
        degrees = sorted((pattern.degree(x) for x in range(v)), reverse=True)
        if degrees[0] == e and v == e + 1:
            return PatternInfo(PatternShape.STAR, e, ell)
        if v == 2 * e and degrees[0] == 1:
            return PatternInfo(PatternShape.MATCHING, e, ell)

    return PatternInfo(PatternShape.GENERIC, e, ell)


def _adjacency(edges: Iterable[Edge]) -> Dict[int, Set[int]]:
    """Vertices sharing an edge with each vertex"""
    adj: Dict[int, Set[int]] = {}
    for edge in edges:
        for x in edge:
            adj.setdefault(x, set()).update(y for y in edge if y != x)
    return adj


def _class_graph(edges: Iterable[Edge]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_edges_from(edges)
    return graph


def maximum_matching(edges: Iterable[Edge]) -> List[Edge]:
    """Exact maximum matching of a graph given by its edge list (Edmonds' blossom)"""
    graph = _class_graph(edges)
    if graph.number_of_edges() == 0:
        return []
    pairs = nx.max_weight_matching(graph, maxcardinality=True)
    return sorted(canonical_edge(pair) for pair in pairs)


def _star_embedding(r: int, color: int, edges: Sequence[Edge], pattern: Hypergraph) -> Optional[Embedding]:
    adj = _adjacency(edges)
    for centre in sorted(adj):
        if len(adj[centre]) >= r:
            leaves = sorted(adj[centre])[:r]
            mapping = {_star_centre(pattern): centre}
            pattern_leaves = [x for x in range(pattern.vertex_count) if x not in mapping]
            mapping.update(zip(pattern_leaves, leaves))
            return Embedding(pattern, tuple(sorted(mapping.items())), color)
    return None


def _star_centre(pattern: Hypergraph) -> int:
    return max(range(pattern.vertex_count), key=pattern.degree)


def _small_vertex_cover(edges: Sequence[Edge], limit: int) -> bool:
    """Whether greedy max-degree picks cover all edges with fewer than `limit` vertices"""
    adj = _adjacency(edges)
    remaining = len(set(edges))
    picked = 0
    while remaining:
        if picked >= limit - 1:
            return False
        v = max(adj, key=lambda x: (len(adj[x]), -x))
        nbrs = adj.pop(v)
        for w in nbrs:
            adj[w].discard(v)
        remaining -= len(nbrs)
        picked += 1
    return True


def _matching_embedding(r: int, color: int, edges: Sequence[Edge], pattern: Hypergraph) -> Optional[Embedding]:
    # cheap bounds first; the blossom only runs when they are inconclusive
    covered = {x for e in edges for x in e}
    if len(covered) < 2 * r or len(edges) < r:
        return None
    greedy = [canonical_edge(e) for e in nx.maximal_matching(_class_graph(edges))]
    if len(greedy) >= r:
        chosen = sorted(greedy)[:r]
    elif 2 * len(greedy) < r or _small_vertex_cover(edges, r):
        return None
    else:
        exact = maximum_matching(edges)
        if len(exact) < r:
            return None
        chosen = exact[:r]
    mapping = {}
    for pattern_edge, host_edge in zip(pattern.edges, chosen):
        mapping.update(zip(pattern_edge, host_edge))
    return Embedding(pattern, tuple(sorted(mapping.items())), color)


def _extend_clique(
    current: List[int], candidates: List[int], size: int, edge_set: Collection[Edge], ell: int
) -> Optional[List[int]]:
    if len(current) == size:
        return current
    for i, v in enumerate(candidates):
        if len(current) + len(candidates) - i < size:
            return None
        if all(
            canonical_edge(s + (v,)) in edge_set
            for s in combinations(current, ell - 1)
        ):
            found = _extend_clique(current + [v], candidates[i + 1:], size, edge_set, ell)
            if found is not None:
                return found
    return None


def _find_clique(size: int, ell: int, edges: Sequence[Edge]) -> Optional[List[int]]:
    if ell == 2:
        graph = _class_graph(edges)
        for members in nx.find_cliques(graph):
            if len(members) >= size:
                return sorted(members)[:size]
        return None
    edge_set = set(edges)
    vertices = sorted({x for e in edges for x in e})
    return _extend_clique([], vertices, size, edge_set, ell)


def _clique_embedding(r: int, ell: int, color: int, edges: Sequence[Edge], pattern: Hypergraph) -> Optional[Embedding]:
    members = _find_clique(r, ell, edges)
    if members is None:
        return None
    return Embedding(pattern, tuple(zip(range(r), members)), color)


def _pattern_vertex_order(pattern: Hypergraph, seed: Sequence[int] = ()) -> List[int]:
    """Order pattern vertices so each one shares an edge with earlier ones when possible"""
    order = list(seed)
    placed = set(order)
    adj = _adjacency(pattern.edges)
    remaining = [x for x in range(pattern.vertex_count) if x not in placed]
    while remaining:
        best = max(
            remaining,
            key=lambda x: (len(adj.get(x, set()) & placed), len(adj.get(x, ())), -x),
        )
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return order


def _embed(
    pattern: Hypergraph,
    edge_set: Collection[Edge],
    host_vertices: Sequence[int],
    initial: Dict[int, int],
) -> Optional[Dict[int, int]]:
    """Backtracking injection of the pattern into an edge set, extending a partial map"""
    order = _pattern_vertex_order(pattern, seed=list(initial))
    host_adj = _adjacency(edge_set)
    pattern_adj = _adjacency(pattern.edges)
    # pattern edges that become fully mapped at each step
    position = {x: i for i, x in enumerate(order)}
    closing: Dict[int, List[Edge]] = {}
    for edge in pattern.edges:
        closing.setdefault(max(edge, key=position.__getitem__), []).append(edge)

    for x in initial:
        for edge in closing.get(x, ()):
            if all(y in initial for y in edge):
                if canonical_edge(initial[y] for y in edge) not in edge_set:
                    return None

    mapping = dict(initial)
    used = set(initial.values())

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        if x in initial:
            return extend(i + 1)
        mapped_nbrs = [mapping[y] for y in pattern_adj.get(x, ()) if y in mapping]
        if mapped_nbrs:
            pool = set(host_adj.get(mapped_nbrs[0], ()))
            for w in mapped_nbrs[1:]:
                pool &= host_adj.get(w, set())
            candidates = sorted(pool - used)
        else:
            candidates = [w for w in host_vertices if w not in used]
        for w in candidates:
            mapping[x] = w
            if all(
                canonical_edge(mapping[y] for y in edge) in edge_set
                for edge in closing.get(x, ())
            ):
                used.add(w)
                if extend(i + 1):
                    return True
                used.discard(w)
            del mapping[x]
        return False

    return mapping if extend(0) else None


def _generic_embedding(
    pattern: Hypergraph, color: int, edges: Sequence[Edge], host_vertices: Sequence[int]
) -> Optional[Embedding]:
    if pattern.vertex_count > len(host_vertices) or pattern.edge_count > len(edges):
        return None
    mapping = _embed(pattern, set(edges), host_vertices, {})
    if mapping is None:
        return None
    return Embedding(pattern, tuple(sorted(mapping.items())), color)


class CopyDetector:
    """Pattern-specific search for copies inside a single color class"""

    def __init__(self, pattern: Hypergraph, method: str = "auto"):
        if method not in ("auto", "generic"):
            raise InvalidInputError(f"unknown detection method '{method}'")
        self.pattern = pattern
        self.info = classify_pattern(pattern)
        if method == "generic":
            self.info = PatternInfo(PatternShape.GENERIC, pattern.edge_count, pattern.uniformity)

    @property
    def shape(self) -> PatternShape:
        return self.info.shape

    def find_in_class(
        self, color: int, edges: Sequence[Edge], host_vertices: Sequence[int]
    ) -> Optional[Embedding]:
        """Search one color class for a copy of the pattern"""
        pattern = self.pattern
        if pattern.edge_count == 0:
            if pattern.vertex_count <= len(host_vertices):
                return Embedding(pattern, tuple(zip(range(pattern.vertex_count), host_vertices)), color)
            return None
        if not edges:
            return None

        r = self.info.size
        if self.shape is PatternShape.STAR:
            return _star_embedding(r, color, edges, pattern)
        if self.shape is PatternShape.MATCHING:
            return _matching_embedding(r, color, edges, pattern)
        if self.shape is PatternShape.CLIQUE:
            return _clique_embedding(r, self.info.uniformity, color, edges, pattern)
        return _generic_embedding(pattern, color, edges, host_vertices)

    def creates_copy(
        self, class_edges: Collection[Edge], edge: Edge, host_vertices: Sequence[int]
    ) -> bool:
        """
        Whether adding an edge to a pattern-free color class creates a copy through it

        Args:
            class_edges: Current edges of the color class, without the new edge
            edge: The edge being added
            host_vertices: Vertices of the host

        Returns:
            True iff the class plus the edge contains a copy using the new edge
        """
        pattern = self.pattern
        edge = canonical_edge(edge)
        if pattern.edge_count == 0:
            return pattern.vertex_count <= len(host_vertices)

        r = self.info.size
        if self.shape is PatternShape.STAR:
            counts = {x: 1 for x in edge}
            for other in class_edges:
                for x in edge:
                    if x in other:
                        counts[x] += 1
            return max(counts.values()) >= r

        if self.shape is PatternShape.MATCHING:
            if len(class_edges) + 1 < r:
                return False
            remaining = [e for e in class_edges if edge[0] not in e and edge[1] not in e]
            return len(maximum_matching(remaining)) >= r - 1

        if self.shape is PatternShape.CLIQUE:
            ell = self.info.uniformity
            if r == ell:
                return True
            grown = set(class_edges)
            grown.add(edge)
            if ell == 2:
                adj = _adjacency(grown)
                common = sorted(adj.get(edge[0], set()) & adj.get(edge[1], set()))
                if len(common) < r - 2:
                    return False
                if r == 3:
                    return True
                inside = set(common)
                sub = [e for e in grown if e[0] in inside and e[1] in inside]
                return _find_clique(r - 2, 2, sub) is not None
            others = [v for v in host_vertices if v not in edge]
            return _extend_clique(list(edge), others, r, grown, ell) is not None

        grown = set(class_edges)
        grown.add(edge)
        for anchor in pattern.edges:
            for image in permutations(edge):
                initial = dict(zip(anchor, image))
                if _embed(pattern, grown, host_vertices, initial) is not None:
                    return True
        return False


def find_monochromatic(
    pattern: Hypergraph, coloring: EdgeColoring, method: str = "auto"
) -> Optional[Embedding]:
    """
    Find a monochromatic copy of a pattern in an edge coloring

    Args:
        pattern: Pattern hypergraph H
        coloring: Coloring of the host
        method: "auto" uses the star, matching and clique fast paths; "generic" forces
            the backtracking embedding search

    Returns:
        Embedding of H into one color class, or None
    """
    host = coloring.host
    if pattern.uniformity != host.uniformity:
        raise UniformityMismatchError(
            f"pattern uniformity {pattern.uniformity} != host uniformity {host.uniformity}"
        )
    detector = CopyDetector(pattern, method)
    vertices = tuple(range(host.vertex_count))

    if pattern.edge_count == 0:
        return detector.find_in_class(0, (), vertices)

    for color, edges in coloring.classes.items():
        found = detector.find_in_class(color, edges, vertices)
        if found is not None:
            logger.debug("Monochromatic copy found", color=color, shape=detector.shape.value)
            return found
    return None


def creates_copy(
    pattern: Hypergraph, class_edges: Collection[Edge], edge: Edge, vertex_count: int
) -> bool:
    """Module-level form of CopyDetector.creates_copy"""
    return CopyDetector(pattern).creates_copy(class_edges, edge, tuple(range(vertex_count)))


def max_matching_per_color(
    coloring: EdgeColoring, colors: Optional[Iterable[int]] = None
) -> Dict[int, int]:
    """
    Exact maximum matching size of every color class

    Args:
        coloring: Coloring of a graph host
        colors: Colors to report; colors without edges map to 0

    Returns:
        Mapping color -> matching number of that class
    """
    if coloring.host.uniformity != 2:
        raise UniformityMismatchError("matching sizes are defined for graph hosts only")
    report = {c: 0 for c in (colors or ())}
    for color, edges in coloring.classes.items():
        report[color] = len(maximum_matching(edges))
    return dict(sorted(report.items()))
