"""
color: proper list edge coloring of a list file
"""

import argparse
from pathlib import Path

import structlog

from src.cli.commands.common import EXIT_OK, emit
from src.cli.io import read_list_file
from src.cli.schemas import EdgeColoringRecord
from src.core.exceptions import InvalidInputError
from src.core.hypergraph import EdgeColoring, ListAssignment, is_proper, verify_list_coloring
from src.listcolor.cliques import clique_list_edge_color
from src.listcolor.galvin import galvin_color_piece, is_bipartite

logger = structlog.get_logger()

METHODS = ("auto", "galvin", "clique")


def color_lists(lists: ListAssignment, method: str = "auto") -> EdgeColoring:
    """Galvin for bipartite hosts, exhaustive clique coloring otherwise"""
    if method == "auto":
        method = "galvin" if is_bipartite(lists.host) else "clique"
    if method == "galvin":
        return galvin_color_piece(lists.host, lists)
    if method == "clique":
        return clique_list_edge_color(len(lists.host.covered_vertices), lists)
    raise InvalidInputError(f"unknown coloring method {method!r}")


def cmd_color(args: argparse.Namespace) -> int:
    lists = read_list_file(args.lists)
    if lists.host.uniformity != 2:
        raise InvalidInputError("list edge coloring needs a graph; the list file has longer edges")
    coloring = color_lists(lists, args.method)
    logger.info(
        "Lists colored",
        method=args.method,
        edges=lists.host.edge_count,
        proper=is_proper(coloring),
        compliant=verify_list_coloring(lists, coloring),
    )
    emit(EdgeColoringRecord.from_coloring(coloring).model_dump(), args.out)
    return EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("color", help="Proper list edge coloring of a list file")
    parser.add_argument("lists", type=Path, help="List file")
    parser.add_argument("--method", choices=METHODS, default="auto")
    parser.add_argument("--out", type=Path, default=None)
    parser.set_defaults(func=cmd_color)
