"""
List colorings with no monochromatic star, composed from piecewise proper colorings
"""

from typing import Dict, List

import structlog

from src.core.exceptions import (
    HostMismatchError,
    InternalDefectError,
    InvalidInputError,
    ListTooShortError,
)
from src.core.hypergraph import Edge, EdgeColoring, Hypergraph, ListAssignment, verify_list_coloring
from src.decomp.decompositions import Decomposition, cycle_decompose, verify_decomposition
from src.listcolor.cliques import clique_list_edge_color, find_proper_list_edge_coloring
from src.listcolor.galvin import BipartiteGraph, galvin_color, is_bipartite, restrict_lists

logger = structlog.get_logger()


def _color_piece(piece: Hypergraph, lists: ListAssignment) -> EdgeColoring:
    """Route a piece to Galvin (bipartite) or the clique colorer"""
    piece_lists = restrict_lists(lists, piece)
    if is_bipartite(piece):
        graph = BipartiteGraph.from_hypergraph(piece)
        if graph.max_degree <= lists.k:
            return galvin_color(graph, piece_lists)
    support = piece.covered_vertices
    order = len(support)
    if piece.edge_count == order * (order - 1) // 2 and order <= lists.k:
        return clique_list_edge_color(order, piece_lists)
    raise InvalidInputError(
        f"piece with {piece.edge_count} edges is neither bipartite with max degree <= {lists.k} "
        f"nor a clique of order <= {lists.k}"
    )


def star_free_coloring(
    decomposition: Decomposition, lists: ListAssignment, k: int, r: int
) -> EdgeColoring:
    """
    Color every piece properly from its lists and take the union

    Each vertex lies in at most r-1 pieces and sees each color at most once per piece,
    so no color appears r times at a vertex.

    Args:
        decomposition: Pieces partitioning the host
        lists: k-lists on the host
        k: List size
        r: Star size

    Returns:
        List coloring with max color degree at most r-1
    """
    if lists.host != decomposition.host:
        raise HostMismatchError("lists and decomposition live on different hosts")
    if lists.k != k:
        raise ListTooShortError(f"expected {k}-lists, got {lists.k}-lists")
    report = verify_decomposition(decomposition)
    if not report.is_valid:
        raise InvalidInputError("pieces do not partition the host")
    if report.max_membership > r - 1:
        raise InvalidInputError(
            f"a vertex lies in {report.max_membership} pieces, more than r-1 = {r - 1}"
        )

    colors: Dict[Edge, int] = {}
    for piece in decomposition.pieces:
        colors.update(_color_piece(piece, lists).as_mapping())
    coloring = EdgeColoring.from_mapping(lists.host, colors)

    if not verify_list_coloring(lists, coloring) or coloring.max_color_degree() > r - 1:
        logger.error("Composed star coloring failed its checks", r=r)
        raise InternalDefectError("composed coloring has a monochromatic star")
    logger.info("Star-free coloring composed", n=lists.host.vertex_count, r=r, pieces=len(decomposition))
    return coloring


def star5_coloring(lists: ListAssignment) -> EdgeColoring:
    """
    2-list coloring of K_5 with no monochromatic K_{1,3}

    K_5 splits into two 5-cycles. A 5-cycle fails to be properly 2-list-colorable only
    when all its lists are equal; such a cycle is colored with one color c from that
    list and the other cycle avoids c edge by edge.
    """
    host = lists.host
    if host.uniformity != 2 or host.vertex_count != 5 or not host.is_complete():
        raise InvalidInputError("star5_coloring needs lists on K_5")
    if lists.k != 2:
        raise InvalidInputError("star5_coloring needs 2-lists")

    cycles = cycle_decompose(5, 5).pieces
    proper: List = [find_proper_list_edge_coloring(restrict_lists(lists, c)) for c in cycles]

    colors: Dict[Edge, int] = {}
    if all(p is not None for p in proper):
        for p in proper:
            colors.update(p.as_mapping())
    else:
        stuck = next(i for i, p in enumerate(proper) if p is None)
        mono, other = cycles[stuck], cycles[1 - stuck]
        shared = lists.list_for(mono.edges[0])
        if any(lists.list_for(e) != shared for e in mono.edges):
            logger.error("Odd cycle with unequal lists was not 2-list-colorable")
            raise InternalDefectError("5-cycle with distinct lists has no proper coloring")
        c = shared[0]
        for e in mono.edges:
            colors[e] = c
        for e in other.edges:
            colors[e] = next(x for x in lists.list_for(e) if x != c)
        logger.debug("Monochromatic cycle used", color=c, cycle=stuck)

    coloring = EdgeColoring.from_mapping(host, colors)
    if not verify_list_coloring(lists, coloring) or coloring.max_color_degree() > 2:
        raise InternalDefectError("star5 coloring has a monochromatic K_{1,3}")
    return coloring
