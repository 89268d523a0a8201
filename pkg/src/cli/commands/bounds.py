"""
bounds, certificate and probe: numeric bound evaluation
"""

import argparse
from pathlib import Path
from typing import Any, Dict, List

import structlog

from src.bounds.certificates import CertificateKind, certificate
from src.bounds.formulas import (
    ClosedFormFamily,
    ListBoundFamily,
    bound_grid,
    check_grid,
    closed_form,
    format_table,
    list_bound,
)
from src.bounds.probe import probe_upper
from src.cli.commands.common import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_UNKNOWN,
    add_budget_arguments,
    budget_from_args,
    emit,
    emit_certificate,
    parse_params,
)
from src.cli.io import parse_pattern
from src.cli.verifier import bound_row_record, bound_table_certificate, union_bound_certificate
from src.core.exceptions import InvalidInputError, ParameterDomainError

logger = structlog.get_logger()


def parse_range(text: str) -> List[int]:
    """"a-b" or "a..b" inclusive, or a comma list"""
    try:
        for sep in ("..", "-"):
            if sep in text:
                lo, hi = text.split(sep, 1)
                return list(range(int(lo), int(hi) + 1))
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise InvalidInputError(f"bad integer range {text!r}")


def _evaluate_one(family: str, params: Dict[str, Any]) -> Dict[str, Any]:
    if "pattern" in params:
        params["pattern"] = parse_pattern(str(params["pattern"]))
    if family in {f.value for f in ClosedFormFamily}:
        row = closed_form(family, int(params.get("r", 0)), int(params.get("k", 2)))
    elif family in {f.value for f in ListBoundFamily}:
        row = list_bound(family, params)
    else:
        raise ParameterDomainError(f"unknown bound family {family!r}")
    return {**bound_row_record(row), "extras": row.extras}


def cmd_bounds(args: argparse.Namespace) -> int:
    if args.eval:
        emit(_evaluate_one(args.eval, parse_params(args.param)), args.out)
        return EXIT_OK

    r_values, k_values = parse_range(args.r), parse_range(args.k)
    rows = bound_grid(r_values, k_values, jobs=args.jobs)
    problems = check_grid(rows)
    for problem in problems:
        logger.warning("Bound grid inconsistency", problem=problem)
    print(format_table(rows, "," if args.csv else "\t"))
    if args.out and not problems:
        emit_certificate(bound_table_certificate(rows, r_values, k_values), args.out)
    return EXIT_CHECK_FAILED if problems else EXIT_OK


def cmd_certificate(args: argparse.Namespace) -> int:
    result = certificate(args.kind, parse_params(args.param))
    emit(
        {
            "kind": result.kind,
            "params": result.params,
            "log_value": result.log_value,
            "passed": result.passed,
            "exact_value": result.exact_value,
            "relative_error": result.relative_error,
            "checks": result.checks,
            "notes": result.notes,
        }
    )
    if not result.passed:
        return EXIT_CHECK_FAILED
    if args.out:
        emit_certificate(union_bound_certificate(result), args.out)
    return EXIT_OK


def cmd_probe(args: argparse.Namespace) -> int:
    pattern = parse_pattern(args.pattern)
    report = probe_upper(
        pattern, args.k, args.t, args.n, args.samples, args.seed, budget_from_args(args), jobs=args.jobs
    )
    emit(
        {
            "pattern": args.pattern,
            "k": args.k,
            "t": args.t,
            "n": args.n,
            "samples": report.samples,
            "seed": report.seed,
            "defeating": report.defeating,
            "escapable": report.escapable,
            "unknown": report.unknown,
            "failure_rate": report.failure_rate,
        },
        args.out,
    )
    return EXIT_UNKNOWN if report.decided == 0 else EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    bounds = subparsers.add_parser("bounds", help="Bound table over an (r, k) grid")
    bounds.add_argument("--r", default="2..100", help="Range such as 2..100 or a comma list")
    bounds.add_argument("--k", default="2..100")
    bounds.add_argument("--csv", action="store_true")
    bounds.add_argument("--eval", default=None, help="Evaluate one family instead of the grid")
    bounds.add_argument("--param", action="append", help="key=value for --eval")
    bounds.add_argument("--out", type=Path, default=None, help="bound-table certificate")
    bounds.set_defaults(func=cmd_bounds)

    cert = subparsers.add_parser("certificate", help="Union-bound certificate evaluation")
    cert.add_argument("--kind", required=True, choices=[k.value for k in CertificateKind])
    cert.add_argument("--param", action="append", help="key=value; uniformity is l")
    cert.add_argument("--out", type=Path, default=None, help="union-bound certificate, written on pass")
    cert.set_defaults(func=cmd_certificate)

    probe = subparsers.add_parser("probe", help="Monte-Carlo probe of random lists")
    probe.add_argument("--pattern", required=True)
    probe.add_argument("--k", type=int, required=True)
    probe.add_argument("--t", type=int, default=0, help="Extra colors beyond k")
    probe.add_argument("--n", type=int, required=True)
    probe.add_argument("--samples", type=int, default=100)
    probe.add_argument("--seed", type=int, required=True)
    probe.add_argument("--out", type=Path, default=None)
    add_budget_arguments(probe)
    probe.set_defaults(func=cmd_probe)
