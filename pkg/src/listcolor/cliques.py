"""
Backtracking proper list edge coloring for small graphs and cliques
"""

from typing import Dict, List, Optional, Set

import structlog

from src.core.exceptions import (
    BudgetExhaustedError,
    HostMismatchError,
    InternalDefectError,
    InvalidInputError,
    ListTooShortError,
)
from src.core.hypergraph import EdgeColoring, Hypergraph, ListAssignment

logger = structlog.get_logger()


def find_proper_list_edge_coloring(
    lists: ListAssignment, node_limit: Optional[int] = None
) -> Optional[EdgeColoring]:
    """
    Search for a proper edge coloring of the list assignment's host from its lists

    Edges are colored most-constrained first (fewest colors still available, then most
    uncolored neighbours); colors are tried in ascending order.

    Args:
        lists: List assignment on a graph host
        node_limit: Optional cap on search nodes

    Returns:
        A proper list coloring, or None when none exists
    """
    host = lists.host
    if host.uniformity != 2:
        raise InvalidInputError("proper edge coloring needs a graph host")

    edges = host.edges
    neighbours: List[List[int]] = [[] for _ in edges]
    for v, incident in host.incidence.items():
        idx = [host.edge_index[e] for e in incident]
        for i in idx:
            neighbours[i].extend(j for j in idx if j != i)

    assigned: Dict[int, int] = {}
    blocked: List[Dict[int, int]] = [dict() for _ in edges]
    nodes = [0]

    def available(i: int) -> List[int]:
        return [c for c in lists.lists[i] if not blocked[i].get(c)]

    def pick() -> int:
        best, best_key = -1, None
        for i in range(len(edges)):
            if i in assigned:
                continue
            free_uncolored = sum(1 for j in neighbours[i] if j not in assigned)
            key = (len(available(i)), -free_uncolored, i)
            if best_key is None or key < best_key:
                best, best_key = i, key
        return best

    def solve() -> bool:
        if len(assigned) == len(edges):
            return True
        nodes[0] += 1
        if node_limit is not None and nodes[0] > node_limit:
            raise BudgetExhaustedError(f"list edge coloring search passed {node_limit} nodes")
        i = pick()
        for c in available(i):
            assigned[i] = c
            for j in neighbours[i]:
                blocked[j][c] = blocked[j].get(c, 0) + 1
            if all(available(j) for j in neighbours[i] if j not in assigned) and solve():
                return True
            for j in neighbours[i]:
                blocked[j][c] -= 1
            del assigned[i]
        return False

    if not solve():
        return None
    return EdgeColoring(host, tuple(assigned[i] for i in range(len(edges))))


def _clique_support(host: Hypergraph) -> Set[int]:
    support = set(host.covered_vertices)
    expected = len(support) * (len(support) - 1) // 2
    if host.edge_count != expected:
        raise InvalidInputError("host is not a clique on its covered vertices")
    return support


def clique_list_edge_color(m: int, lists: ListAssignment) -> EdgeColoring:
    """
    Proper list edge coloring of a K_m from lists of size at least m

    Args:
        m: Clique order
        lists: Lists on a host that is a clique of order m on its covered vertices

    Returns:
        Proper list coloring; exhaustion contradicts the list chromatic index bound
        and is raised as a defect
    """
    if lists.host.uniformity != 2:
        raise InvalidInputError("clique list coloring needs a graph host")
    support = _clique_support(lists.host)
    if lists.host.edge_count and len(support) != m:
        raise HostMismatchError(f"host clique has order {len(support)}, expected {m}")
    if lists.k < m:
        raise ListTooShortError(f"lists of size {lists.k} below clique order {m}")

    coloring = find_proper_list_edge_coloring(lists)
    if coloring is None:
        logger.error("Clique list coloring exhausted", m=m, k=lists.k)
        raise InternalDefectError(f"no proper list coloring of K_{m} from {lists.k}-lists")
    return coloring
