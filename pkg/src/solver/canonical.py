"""
Canonical forms of list assignments under color renaming and host automorphisms,
and lazy enumeration of one representative per class
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher
import structlog

from src.core.exceptions import BudgetExhaustedError, InvalidInputError
from src.core.hypergraph import Hypergraph, ListAssignment, canonical_edge
from src.solver.budget import BudgetTracker

logger = structlog.get_logger()

Palette = Tuple[int, ...]
PatternKey = Tuple[Palette, ...]

# hosts up to this order get a brute-force automorphism group when not complete
BRUTE_FORCE_AUTOMORPHISM_ORDER = 8


@dataclass(frozen=True)
class CanonicalListPattern:
    """A list assignment class; the key is the representative's lists in edge order"""

    host: Hypergraph
    k: int
    key: PatternKey

    @property
    def distinct_lists(self) -> int:
        return len(set(self.key))

    def to_lists(self) -> ListAssignment:
        return ListAssignment(self.host, self.k, self.key)


def relabel_colors(lists: Sequence[Palette]) -> PatternKey:
    """
    Rename colors by their incidence with the edge positions

    Colors are ranked by the ascending tuple of positions holding them, with a sentinel
    closing each tuple, so the result depends only on the incidence structure.
    """
    incidence: Dict[int, List[int]] = {}
    for position, palette in enumerate(lists):
        for c in palette:
            incidence.setdefault(c, []).append(position)
    sentinel = len(lists)
    order = sorted(incidence, key=lambda c: (tuple(incidence[c]) + (sentinel,), c))
    rename = {c: i for i, c in enumerate(order)}
    return tuple(tuple(sorted(rename[c] for c in palette)) for palette in lists)


@lru_cache(maxsize=64)
def host_automorphisms(host: Hypergraph) -> Tuple[Tuple[int, ...], ...]:
    """
    Vertex automorphisms of a non-complete host

    Graphs use the VF2 matcher; small hypergraphs are checked permutation by permutation;
    larger hypergraphs fall back to the identity, which keeps canonical keys sound.
    """
    n = host.vertex_count
    identity = tuple(range(n))
    if host.uniformity == 2:
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(host.edges)
        found = {tuple(m[v] for v in range(n)) for m in GraphMatcher(graph, graph).isomorphisms_iter()}
        return tuple(sorted(found))
    if n <= BRUTE_FORCE_AUTOMORPHISM_ORDER:
        found = []
        for perm in permutations(range(n)):
            if all(host.has_edge(perm[v] for v in e) for e in host.edges):
                found.append(perm)
        return tuple(found)
    logger.warning("Automorphism group replaced by identity", n=n, uniformity=host.uniformity)
    return (identity,)


def _apply(host: Hypergraph, perm: Tuple[int, ...], lists: Sequence[Palette]) -> List[Palette]:
    """Lists moved along a vertex permutation: the image of edge e receives L_e"""
    index = host.edge_index
    moved: List[Palette] = [()] * len(lists)
    for edge, palette in zip(host.edges, lists):
        moved[index[canonical_edge(perm[v] for v in edge)]] = palette
    return moved


def refine_vertices(host: Hypergraph, lists: Sequence[Palette], rounds: int = 4) -> List[int]:
    """
    Vertex labels from iterated refinement of the edge/color incidence structure

    Labels are dense ranks of isomorphism-invariant signatures, recompressed each round.
    """
    color_freq: Dict[int, int] = {}
    for palette in lists:
        for c in palette:
            color_freq[c] = color_freq.get(c, 0) + 1

    edge_label = [tuple(sorted(color_freq[c] for c in palette)) for palette in lists]
    edge_label = _compress(edge_label)
    vertex_label = [0] * host.vertex_count
    classes = 1
    for _ in range(rounds):
        color_sig: Dict[int, List[int]] = {}
        for i, palette in enumerate(lists):
            for c in palette:
                color_sig.setdefault(c, []).append(edge_label[i])
        color_label = {c: tuple(sorted(sig)) for c, sig in color_sig.items()}

        vertex_sig = [
            (vertex_label[v], tuple(sorted(edge_label[host.edge_index[e]] for e in host.incidence[v])))
            for v in range(host.vertex_count)
        ]
        vertex_label = _compress(vertex_sig)
        edge_sig = [
            (
                edge_label[i],
                tuple(sorted(vertex_label[v] for v in e)),
                tuple(sorted(color_label[c] for c in lists[i])),
            )
            for i, e in enumerate(host.edges)
        ]
        edge_label = _compress(edge_sig)
        refined = len(set(vertex_label))
        if refined == classes:
            break
        classes = refined
    return vertex_label


def _compress(signatures: Sequence) -> List[int]:
    ranks = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [ranks[sig] for sig in signatures]


def _cell_permutations(labels: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Permutations sending each label cell onto the block of positions reserved for it"""
    cells: Dict[int, List[int]] = {}
    for v, lab in enumerate(labels):
        cells.setdefault(lab, []).append(v)
    ordered = [cells[lab] for lab in sorted(cells)]
    blocks = []
    start = 0
    for cell in ordered:
        blocks.append(range(start, start + len(cell)))
        start += len(cell)
    n = len(labels)
    for choice in product(*(permutations(block) for block in blocks)):
        perm = [0] * n
        for cell, targets in zip(ordered, choice):
            for v, target in zip(cell, targets):
                perm[v] = target
        yield tuple(perm)


def canonical_key(lists: ListAssignment) -> PatternKey:
    """
    Canonical key of a list assignment

    Two assignments get the same key only if a host automorphism followed by a color
    renaming maps one onto the other.
    """
    host = lists.host
    if lists.is_uniform():
        return tuple(tuple(range(lists.k)) for _ in host.edges)

    if host.is_complete():
        candidates = _cell_permutations(refine_vertices(host, lists.lists))
    else:
        candidates = iter(host_automorphisms(host))

    best: Optional[PatternKey] = None
    for perm in candidates:
        encoded = relabel_colors(_apply(host, perm, lists.lists))
        if best is None or encoded < best:
            best = encoded
    return best


def canonical_pattern(lists: ListAssignment) -> CanonicalListPattern:
    return CanonicalListPattern(lists.host, lists.k, canonical_key(lists))


def _raw_assignments(edge_count: int, k: int, distinct: int) -> Iterator[List[Palette]]:
    """
    Every assignment with exactly `distinct` different lists, up to color renaming

    Lists are built edge by edge; a new list mixes already used colors with the next
    unused ones, so the color universe stays within k times the number of edges.
    """
    lists: List[Palette] = []
    palettes: List[Palette] = []

    def extend(position: int, used: int) -> Iterator[List[Palette]]:
        if position == edge_count:
            if len(palettes) == distinct:
                yield list(lists)
            return
        left = edge_count - position
        if len(palettes) < distinct:
            for fresh in range(0 if palettes else k, k + 1):
                for old in combinations(range(used), k - fresh):
                    palette = old + tuple(range(used, used + fresh))
                    if palette in palettes:
                        continue
                    palettes.append(palette)
                    lists.append(palette)
                    yield from extend(position + 1, used + fresh)
                    lists.pop()
                    palettes.pop()
        if palettes and distinct - len(palettes) < left:
            for palette in list(palettes):
                lists.append(palette)
                yield from extend(position + 1, used)
                lists.pop()

    yield from extend(0, 0)


def enumerate_canonical_patterns(
    host: Hypergraph,
    k: int,
    max_distinct: Optional[int] = None,
    tracker: Optional[BudgetTracker] = None,
) -> Iterator[CanonicalListPattern]:
    """
    Yield one representative per canonical list pattern, uniform lists first

    Patterns come in layers by the number of distinct lists, so the order is the
    distance from the uniform assignment.

    Args:
        host: Host hypergraph
        k: List size
        max_distinct: Stop after this many distinct lists (1 yields the uniform pattern only)
        tracker: Budget charged one node per raw candidate

    Raises:
        BudgetExhaustedError: The tracker ran out before the enumeration finished
    """
    if k < 1:
        raise InvalidInputError("list size must be positive")
    e = host.edge_count
    if e == 0:
        yield CanonicalListPattern(host, k, ())
        return

    top = e if max_distinct is None else min(max_distinct, e)
    for distinct in range(1, top + 1):
        seen = set()
        for raw in _raw_assignments(e, k, distinct):
            if tracker is not None and not tracker.tick():
                raise BudgetExhaustedError(
                    f"pattern enumeration stopped in layer {distinct} after {len(seen)} patterns"
                )
            key = canonical_key(ListAssignment(host, k, tuple(raw)))
            if key in seen:
                continue
            seen.add(key)
            yield CanonicalListPattern(host, k, key)
        logger.debug("Pattern layer complete", distinct=distinct, patterns=len(seen))
