"""
Search for a list coloring that avoids every monochromatic copy of a pattern
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set

import structlog

from src.core.exceptions import InternalDefectError, ScaleGuardError, UniformityMismatchError
from src.core.hypergraph import EdgeColoring, Hypergraph, ListAssignment, verify_list_coloring
from src.core.monochromatic import CopyDetector, find_monochromatic
from src.solver.budget import BudgetTracker, SearchBudget, SearchStatus

logger = structlog.get_logger()

# recursion depth equals the edge count
MAX_SEARCH_EDGES = 900


class _OutOfBudget(Exception):
    pass


@dataclass
class AdversaryResult:
    """Tri-state outcome; the coloring is present exactly when status is FOUND"""

    status: SearchStatus
    coloring: Optional[EdgeColoring] = None
    nodes: int = 0
    exhausted_reason: Optional[str] = None

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    @property
    def proven_none(self) -> bool:
        return self.status is SearchStatus.PROVEN_NONE


class AdversarySearch:
    """
    Backtracking over edges, most constrained first

    Each unassigned edge keeps the set of its list colors that can still be added to
    their color class without closing a copy of the pattern. Assigning a color re-checks
    only that color on the other edges. Unused colors held by exactly the same edges
    are interchangeable, so only one of them is branched on.
    """

    def __init__(self, pattern: Hypergraph, lists: ListAssignment, tracker: BudgetTracker):
        self.pattern = pattern
        self.lists = lists
        self.host = lists.host
        self.tracker = tracker
        self.detector = CopyDetector(pattern)
        self.vertices = tuple(range(self.host.vertex_count))

        self.classes: Dict[int, List] = {c: [] for c in lists.universe}
        self.assigned: Dict[int, int] = {}
        self.domains: List[Set[int]] = []
        self.signature: Dict[int, FrozenSet[int]] = {
            c: frozenset(self.host.edge_index[e] for e in edges)
            for c, edges in lists.edges_with_color.items()
        }

    def _smallest_colors(self) -> EdgeColoring:
        return EdgeColoring(self.host, tuple(pal[0] for pal in self.lists.lists))

    def run(self) -> AdversaryResult:
        pattern, host = self.pattern, self.host
        if pattern.edge_count == 0:
            if pattern.vertex_count <= host.vertex_count:
                return AdversaryResult(SearchStatus.PROVEN_NONE)
            return AdversaryResult(SearchStatus.FOUND, self._smallest_colors())
        if pattern.vertex_count > host.vertex_count or pattern.edge_count > host.edge_count:
            return AdversaryResult(SearchStatus.FOUND, self._smallest_colors())
        if host.edge_count > MAX_SEARCH_EDGES:
            raise ScaleGuardError(f"adversary search limited to {MAX_SEARCH_EDGES} edges")

        for edge, palette in zip(host.edges, self.lists.lists):
            self.domains.append(
                {c for c in palette if not self.detector.creates_copy((), edge, self.vertices)}
            )

        try:
            solved = self._search()
        except _OutOfBudget:
            return AdversaryResult(
                SearchStatus.UNKNOWN,
                nodes=self.tracker.nodes,
                exhausted_reason=self.tracker.exhausted_reason,
            )

        if not solved:
            return AdversaryResult(SearchStatus.PROVEN_NONE, nodes=self.tracker.nodes)

        coloring = EdgeColoring(host, tuple(self.assigned[i] for i in range(host.edge_count)))
        if not verify_list_coloring(self.lists, coloring) or find_monochromatic(pattern, coloring):
            logger.error("Adversary returned a coloring that fails its own checks")
            raise InternalDefectError("adversary coloring failed verification")
        return AdversaryResult(SearchStatus.FOUND, coloring, nodes=self.tracker.nodes)

    def _pick(self) -> int:
        best, best_size = -1, None
        for i, domain in enumerate(self.domains):
            if i in self.assigned:
                continue
            if best_size is None or len(domain) < best_size:
                best, best_size = i, len(domain)
                if best_size == 0:
                    break
        return best

    def _color_order(self, i: int) -> List[int]:
        order = sorted(self.domains[i], key=lambda c: (len(self.classes[c]), c))
        tried_fresh: Set[FrozenSet[int]] = set()
        chosen = []
        for c in order:
            if not self.classes[c]:
                if self.signature[c] in tried_fresh:
                    continue
                tried_fresh.add(self.signature[c])
            chosen.append(c)
        return chosen

    def _search(self) -> bool:
        edges = self.host.edges
        if len(self.assigned) == len(edges):
            return True
        if not self.tracker.tick():
            raise _OutOfBudget()

        i = self._pick()
        if not self.domains[i]:
            return False

        for c in self._color_order(i):
            self.assigned[i] = c
            removed: List[int] = []
            alive = True
            for j, domain in enumerate(self.domains):
                if j in self.assigned or c not in domain:
                    continue
                if self.detector.creates_copy(self.classes[c] + [edges[i]], edges[j], self.vertices):
                    domain.discard(c)
                    removed.append(j)
                    if not domain:
                        alive = False
                        break
            self.classes[c].append(edges[i])

            if alive and self._search():
                return True

            self.classes[c].pop()
            for j in removed:
                self.domains[j].add(c)
            del self.assigned[i]
        return False


def adversary_color(
    pattern: Hypergraph,
    lists: ListAssignment,
    budget: Optional[SearchBudget] = None,
    tracker: Optional[BudgetTracker] = None,
) -> AdversaryResult:
    """
    Look for an L-coloring of the host with no monochromatic copy of the pattern

    Args:
        pattern: Pattern hypergraph H
        lists: List assignment on the host
        budget: Node, time and memory limits; defaults to the configured budget
        tracker: Shared tracker, for callers charging several searches to one budget

    Returns:
        FOUND with a verified coloring, PROVEN_NONE, or UNKNOWN when the budget ran out
    """
    if pattern.uniformity != lists.host.uniformity:
        raise UniformityMismatchError(
            f"pattern uniformity {pattern.uniformity} != host uniformity {lists.host.uniformity}"
        )
    tracker = tracker or BudgetTracker(budget)
    result = AdversarySearch(pattern, lists, tracker).run()
    logger.debug(
        "Adversary search finished",
        status=result.status.value,
        nodes=result.nodes,
        host_edges=lists.host.edge_count,
    )
    return result
