"""
decompose: emit a decomposition of a complete graph and its recheck
"""

import argparse
from pathlib import Path

from src.cli.commands.common import EXIT_CHECK_FAILED, EXIT_OK, emit
from src.cli.schemas import DecompositionRecord
from src.core.exceptions import InvalidInputError
from src.decomp.decompositions import (
    Decomposition,
    cycle_decompose,
    star_block_partition,
    verify_decomposition,
    walecki,
    walecki_odd,
)

KINDS = ("walecki", "walecki-odd", "cycles", "star-blocks")


def build_decomposition(args: argparse.Namespace) -> Decomposition:
    if args.kind != "star-blocks" and args.n is None:
        raise InvalidInputError(f"--n is required for {args.kind}")
    if args.kind == "walecki":
        return walecki(args.n)
    if args.kind == "walecki-odd":
        return walecki_odd(args.n)
    if args.kind == "cycles":
        if args.m is None:
            raise InvalidInputError("--m is required for cycle decompositions")
        return cycle_decompose(args.n, args.m)
    if args.r is None or args.k is None:
        raise InvalidInputError("--r and --k are required for star-blocks")
    return star_block_partition(args.r, args.k)


def cmd_decompose(args: argparse.Namespace) -> int:
    decomposition = build_decomposition(args)
    report = verify_decomposition(decomposition)
    emit(
        {
            "decomposition": DecompositionRecord.from_decomposition(decomposition).model_dump(),
            "report": {
                "edge_disjoint": report.edge_disjoint,
                "covers": report.covers,
                "pieces": len(decomposition),
                "max_membership": report.max_membership,
            },
        },
        args.out,
    )
    return EXIT_OK if report.is_valid else EXIT_CHECK_FAILED


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("decompose", help="Decompose K_n and verify the pieces")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--m", type=int, default=None, help="Cycle length")
    parser.add_argument("--r", type=int, default=None)
    parser.add_argument("--k", type=int, default=None)
    parser.add_argument("--out", type=Path, default=None)
    parser.set_defaults(func=cmd_decompose)
