"""
Command-line entry point for the list Ramsey toolkit
"""

import argparse
import sys
from typing import List, NoReturn, Optional

import structlog

from src.cli.commands import bounds, color, decompose, exact, verify, witness
from src.core.config import settings
from src.core.exceptions import InvalidInputError, ListRamseyError, MalformedInputError
from src.core.logging import configure_logging

logger = structlog.get_logger()

VERSION = "1.0.0"


class UsageError(InvalidInputError):
    """Bad command line"""


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors share exit code 64"""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="listramsey",
        description="Exact search, witnesses and bounds for list Ramsey numbers",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    parser.add_argument("--json-logs", action="store_true", default=settings.LOG_JSON)
    parser.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS, help="Worker processes")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for module in (exact, witness, decompose, color, bounds, verify):
        module.register(subparsers)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and map errors to exit codes

    Returns:
        0 on success, 1 when a check fails, 2 when a budget ran out, 64 on bad input,
        70 on an internal defect
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(args.log_level, args.json_logs)
    try:
        return args.func(args)
    except MalformedInputError as exc:
        logger.error("Malformed input", location=exc.location, error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ListRamseyError as exc:
        logger.error("Command failed", command=args.command, error=str(exc), kind=type(exc).__name__)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
