"""
verify: recheck a certificate file from its payload
"""

import argparse
from pathlib import Path

from src.cli.commands.common import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_UNKNOWN,
    add_budget_arguments,
    budget_from_args,
    emit,
)
from src.cli.io import read_certificate
from src.cli.verifier import UNKNOWN_DETAIL, verify_certificate


def cmd_verify(args: argparse.Namespace) -> int:
    cert = read_certificate(args.certificate)
    checks = verify_certificate(cert, budget_from_args(args))
    passed = all(check.passed for check in checks)
    emit(
        {
            "certificate": str(args.certificate),
            "kind": cert.kind,
            "passed": passed,
            "checks": [check.model_dump() for check in checks],
        }
    )
    if passed:
        return EXIT_OK
    # a definite failure outranks an undecided check
    if any(not check.passed and check.detail != UNKNOWN_DETAIL for check in checks):
        return EXIT_CHECK_FAILED
    return EXIT_UNKNOWN


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("verify", help="Recheck a certificate file")
    parser.add_argument("certificate", type=Path)
    add_budget_arguments(parser)
    parser.set_defaults(func=cmd_verify)
