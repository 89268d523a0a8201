"""
Exact edge-choosability of tiny graphs by canonical list pattern enumeration

Two reductions keep the enumeration small. A graph whose line graph is (k-1)-degenerate
is colored greedily from any k-lists. Otherwise every G - e is decided first: once all
of them are k-choosable, an assignment in which some edge holds a color missing from
every neighbouring list is colorable (color G - e, then give e that color), so only
tight assignments are enumerated, deduplicated up to color renaming and automorphism.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx
import structlog

from src.core.config import settings
from src.core.exceptions import BudgetExhaustedError, InvalidInputError, ScaleGuardError
from src.core.hypergraph import Edge, Hypergraph, ListAssignment
from src.listcolor.cliques import find_proper_list_edge_coloring
from src.solver.budget import BudgetTracker, SearchBudget
from src.solver.canonical import Palette, PatternKey, canonical_key

logger = structlog.get_logger()


@dataclass
class ChoosabilityReport:
    """Verdict of edge_choosability with the first defeating assignment, if any"""

    choosable: bool
    patterns_checked: int
    defeating_lists: Optional[ListAssignment] = None


def line_graph_degeneracy(graph: Hypergraph) -> int:
    """Degeneracy of the line graph; lists longer than it always admit a greedy coloring"""
    line = nx.line_graph(nx.Graph(graph.edges))
    return max(nx.core_number(line).values(), default=0)


def _edge_neighbours(graph: Hypergraph) -> List[Tuple[int, ...]]:
    index = graph.edge_index
    return [
        tuple(sorted({index[f] for v in edge for f in graph.incidence[v] if f != edge}))
        for edge in graph.edges
    ]


def _tight_assignments(neighbours: List[Tuple[int, ...]], k: int) -> Iterator[List[Palette]]:
    """
    k-list assignments, up to color renaming, where every color of every edge also
    lies on a neighbouring edge's list

    Colors enter in order of first use. A color seen once needs a later slot, and an
    edge is checked as soon as its whole neighbourhood is assigned.
    """
    edge_count = len(neighbours)
    closing: Dict[int, List[int]] = {}
    for i, around in enumerate(neighbours):
        closing.setdefault(max((i,) + around), []).append(i)
    counts = [0] * (k * edge_count)
    lists: List[Palette] = []

    def shared(i: int) -> bool:
        around = {c for j in neighbours[i] for c in lists[j]}
        return all(c in around for c in lists[i])

    def extend(position: int, used: int) -> Iterator[List[Palette]]:
        if position == edge_count:
            yield list(lists)
            return
        slots_after = k * (edge_count - position - 1)
        for fresh in range(k if position == 0 else 0, k + 1):
            for old in combinations(range(used), k - fresh):
                palette = old + tuple(range(used, used + fresh))
                lists.append(palette)
                for c in palette:
                    counts[c] += 1
                pending = sum(1 for c in range(used + fresh) if counts[c] == 1)
                if pending <= slots_after and all(shared(i) for i in closing.get(position, ())):
                    yield from extend(position + 1, used + fresh)
                for c in palette:
                    counts[c] -= 1
                lists.pop()

    yield from extend(0, 0)


def _with_fresh_list(graph: Hypergraph, lists: ListAssignment, edge: Edge) -> ListAssignment:
    """Defeating lists of G - e extended to G"""
    rows = lists.as_mapping()
    top = max(lists.universe, default=-1) + 1
    rows[edge] = tuple(range(top, top + lists.k))
    return ListAssignment.from_mapping(graph, rows, lists.k)


class _ChoosabilitySearch:
    """Decides a graph and every edge-deleted subgraph it depends on, memoized by edge set"""

    def __init__(self, k: int, tracker: BudgetTracker):
        self.k = k
        self.tracker = tracker
        self.patterns_checked = 0
        self._decided: Dict[Tuple[Edge, ...], Optional[ListAssignment]] = {}

    def defeating_lists(self, graph: Hypergraph) -> Optional[ListAssignment]:
        """None when the graph is k-edge-choosable"""
        if graph.edges not in self._decided:
            self._decided[graph.edges] = self._search(graph)
        return self._decided[graph.edges]

    def _search(self, graph: Hypergraph) -> Optional[ListAssignment]:
        if line_graph_degeneracy(graph) < self.k:
            return None
        for edge in graph.edges:
            smaller = graph.subgraph(e for e in graph.edges if e != edge)
            lists = self.defeating_lists(smaller)
            if lists is not None:
                return _with_fresh_list(graph, lists, edge)

        seen: set = set()
        for raw in _tight_assignments(_edge_neighbours(graph), self.k):
            if not self.tracker.tick():
                raise BudgetExhaustedError(f"tight list patterns stopped after {len(seen)} patterns")
            key: PatternKey = canonical_key(ListAssignment(graph, self.k, tuple(raw)))
            if key in seen:
                continue
            seen.add(key)
            self.patterns_checked += 1
            lists = ListAssignment(graph, self.k, key)
            if find_proper_list_edge_coloring(lists) is None:
                return lists
        return None


def edge_choosability_report(
    graph: Hypergraph, k: int, pattern_budget: Optional[int] = None
) -> ChoosabilityReport:
    """
    Decide whether every assignment of k-lists to the edges admits a proper coloring

    Args:
        graph: Graph whose edges are list-colored
        k: List size
        pattern_budget: Raw candidate budget; defaults to the configured guard

    Returns:
        Report with the verdict and the number of canonical patterns checked

    Raises:
        ScaleGuardError: The pattern enumeration exceeded the budget
    """
    if graph.uniformity != 2:
        raise InvalidInputError("edge choosability is defined for graphs")
    if k < 1:
        raise InvalidInputError("list size must be positive")

    limit = pattern_budget or settings.CHOOSABILITY_PATTERN_BUDGET
    search = _ChoosabilitySearch(k, BudgetTracker(SearchBudget.default().with_nodes(limit)))
    try:
        defeating = search.defeating_lists(graph)
    except BudgetExhaustedError as exc:
        raise ScaleGuardError(
            f"canonical list patterns for {graph.edge_count} edges exceed the budget of {limit}"
        ) from exc

    if defeating is not None:
        logger.info("Edge choosability refuted", k=k, patterns_checked=search.patterns_checked)
        return ChoosabilityReport(False, search.patterns_checked, defeating)
    logger.info("Edge choosability confirmed", k=k, patterns_checked=search.patterns_checked)
    return ChoosabilityReport(True, search.patterns_checked)


def edge_choosability(graph: Hypergraph, k: int, pattern_budget: Optional[int] = None) -> bool:
    """True iff the graph is k-edge-choosable"""
    return edge_choosability_report(graph, k, pattern_budget).choosable
