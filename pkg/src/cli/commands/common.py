"""
Helpers shared by the subcommands
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.cli.io import dumps, write_certificate, write_text_atomic
from src.cli.schemas import Certificate
from src.core.exceptions import InvalidInputError
from src.solver.budget import SearchBudget

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64


def add_budget_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("search budget")
    group.add_argument("--node-limit", type=int, default=None, help="Search nodes per search")
    group.add_argument("--time-limit", type=float, default=None, help="Seconds per search")
    group.add_argument("--memory-limit-mb", type=int, default=None, help="Resident memory cap")


def budget_from_args(args: argparse.Namespace) -> SearchBudget:
    """Command-line limits over the environment defaults"""
    default = SearchBudget.default()
    return SearchBudget(
        node_limit=args.node_limit or default.node_limit,
        time_limit_seconds=args.time_limit or default.time_limit_seconds,
        memory_limit_bytes=(args.memory_limit_mb * 1024 * 1024) if args.memory_limit_mb else default.memory_limit_bytes,
    )


def _scalar(text: str) -> Any:
    for convert in (int, Fraction, float):
        try:
            return convert(text)
        except (ValueError, ZeroDivisionError):
            continue
    return text


def parse_params(pairs: Optional[List[str]]) -> Dict[str, Any]:
    """key=value pairs; values become int, Fraction or float when they parse as one"""
    params: Dict[str, Any] = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise InvalidInputError(f"expected key=value, got {pair!r}")
        params[key.strip()] = _scalar(value.strip())
    return params


def emit(data: Any, out: Optional[Path] = None) -> None:
    """JSON to a file (atomically) or to stdout"""
    text = dumps(data)
    if out is None:
        sys.stdout.write(text)
    else:
        write_text_atomic(out, text)


def emit_certificate(cert: Certificate, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(dumps(cert.model_dump(mode="python")))
    else:
        write_certificate(out, cert)
