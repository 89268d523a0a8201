"""
witness: build a lower-bound list coloring and write it as a certificate
"""

import argparse
from pathlib import Path
from typing import Optional

import structlog

from src.cli.commands.common import EXIT_OK, emit_certificate
from src.cli.io import parse_pattern, random_list_assignment, read_list_file
from src.cli.verifier import lower_witness_certificate
from src.core.exceptions import HostMismatchError, InvalidInputError, ParameterDomainError
from src.core.hypergraph import ListAssignment, complete_hypergraph, matching
from src.core.monochromatic import PatternShape, classify_pattern
from src.witness.pipelines import (
    WitnessResult,
    WitnessStrategy,
    chromatic_lower_witness,
    matching_lower_witness,
    matching_pipeline_parameters,
    star_lower_witness,
    star_witness_host,
)

logger = structlog.get_logger()


def _lists(args: argparse.Namespace, n: Optional[int], uniformity: int) -> ListAssignment:
    """Lists from --lists, or seeded random ones on K_n"""
    if args.lists is not None:
        lists = read_list_file(args.lists, n)
        if n is not None and lists.host.vertex_count != n:
            raise HostMismatchError(f"{args.lists} lives on {lists.host.vertex_count} vertices, expected {n}")
        if not lists.host.is_complete():
            raise HostMismatchError(f"{args.lists} does not list every edge of K_{lists.host.vertex_count}")
        if lists.k != args.k:
            raise HostMismatchError(f"{args.lists} has {lists.k}-lists, expected {args.k}")
        return lists
    if args.seed is None:
        raise InvalidInputError("give --lists FILE or --seed for random lists")
    if n is None:
        raise InvalidInputError("--n is required with random lists for this strategy")
    universe = args.universe or 2 * args.k
    return random_list_assignment(complete_hypergraph(n, uniformity), args.k, universe, args.seed)


def build_witness(args: argparse.Namespace) -> WitnessResult:
    strategy = WitnessStrategy(args.strategy)
    r, k = args.r, args.k
    if strategy is WitnessStrategy.STAR5:
        if (r, k) != (3, 2):
            raise ParameterDomainError("star5 is the K_{1,3}, k = 2 construction on K_5")
        return star_lower_witness(r, k, _lists(args, 5, 2))

    if strategy is WitnessStrategy.STAR_COMPOSE:
        n = args.n if args.n is not None else (None if args.lists else star_witness_host(r, k))
        result = star_lower_witness(r, k, _lists(args, n, 2))
        if result.strategy is not strategy:
            raise ParameterDomainError(f"r={r}, k={k} on K_{result.n} is covered by {result.strategy.value}")
        return result

    pattern = parse_pattern(args.pattern) if args.pattern else matching(r)
    if classify_pattern(pattern).shape is PatternShape.MATCHING:
        r_match = pattern.edge_count
        _, n = matching_pipeline_parameters(r_match, k)
        return matching_lower_witness(r_match, k, _lists(args, n, 2))
    return chromatic_lower_witness(pattern, r, _lists(args, args.n, pattern.uniformity))


def cmd_witness(args: argparse.Namespace) -> int:
    result = build_witness(args)
    emit_certificate(lower_witness_certificate(result), args.out)
    logger.info("Witness written", strategy=result.strategy.value, n=result.n, out=str(args.out or "-"))
    return EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("witness", help="Lower-bound witness coloring")
    parser.add_argument("--strategy", required=True, choices=[s.value for s in WitnessStrategy])
    parser.add_argument("--r", type=int, required=True, help="Star or matching size, or the color bound for type reduction")
    parser.add_argument("--k", type=int, required=True, help="List size")
    parser.add_argument("--n", type=int, default=None, help="Host size")
    parser.add_argument("--pattern", default=None, help="Pattern for type-reduction; defaults to M{r}")
    parser.add_argument("--lists", type=Path, default=None, help="List file")
    parser.add_argument("--seed", type=int, default=None, help="Seed for random lists")
    parser.add_argument("--universe", type=int, default=None, help="Colors random lists draw from; default 2k")
    parser.add_argument("--out", type=Path, default=None)
    parser.set_defaults(func=cmd_witness)
