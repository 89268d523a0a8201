"""
exact and list-exact: Ramsey and list Ramsey numbers by search
"""

import argparse
from pathlib import Path
from typing import Any, Dict, List, Optional

import structlog

from src.cli.commands.common import (
    EXIT_OK,
    EXIT_UNKNOWN,
    add_budget_arguments,
    budget_from_args,
    emit,
    emit_certificate,
)
from src.cli.io import parse_pattern
from src.cli.verifier import lb_proof_certificate, upper_witness_certificate
from src.core.exceptions import ParameterDomainError
from src.solver.ramsey import ListDecisionStatus, ListRamseyDecision, decide_list_lb, decide_list_ub, ramsey_exact

logger = structlog.get_logger()


def cmd_exact(args: argparse.Namespace) -> int:
    pattern = parse_pattern(args.pattern)
    value = ramsey_exact(pattern, args.colors, args.n_max, budget_from_args(args))
    print(value)
    return EXIT_OK


def _row(decision: ListRamseyDecision) -> Dict[str, Any]:
    return {
        "n": decision.n,
        "status": decision.status.value,
        "patterns_checked": decision.patterns_checked,
        "patterns_unknown": decision.patterns_unknown,
        "refinements": decision.refinements,
    }


def cmd_list_exact(args: argparse.Namespace) -> int:
    """
    Sweep n upward with decide_list_ub until some k-lists force the pattern

    The value is exact only when every smaller host in the sweep was shown to have no
    witness; a sweep starting above v(H) proves the lower end with decide_list_lb.
    """
    pattern = parse_pattern(args.pattern)
    budget = budget_from_args(args)
    n_min = args.n_min or max(pattern.vertex_count, 1)
    if args.n_max < n_min:
        raise ParameterDomainError(f"--n-max {args.n_max} is below the first host size {n_min}")

    rows: List[Dict[str, Any]] = []
    witness: Optional[ListRamseyDecision] = None
    below_settled = True
    for n in range(n_min, args.n_max + 1):
        decision = decide_list_ub(pattern, args.k, n, budget, jobs=args.jobs)
        rows.append(_row(decision))
        if decision.status is ListDecisionStatus.WITNESS:
            witness = decision
            break
        if decision.status is ListDecisionStatus.UNKNOWN:
            below_settled = False

    proof: Optional[ListRamseyDecision] = None
    if witness is not None and (args.proof_out or n_min > pattern.vertex_count) and witness.n > 1:
        proof = decide_list_lb(pattern, args.k, witness.n - 1, budget, jobs=args.jobs)
        rows.append({**_row(proof), "lower_end": True})
        if proof.status is not ListDecisionStatus.PROOF:
            below_settled = False

    exact = witness is not None and below_settled
    emit(
        {
            "pattern": args.pattern,
            "k": args.k,
            "value": witness.n if exact else None,
            "upper": witness.n if witness is not None else None,
            "sweep": rows,
        }
    )
    if witness is not None and args.out:
        emit_certificate(upper_witness_certificate(witness, budget), args.out)
    if proof is not None and proof.status is ListDecisionStatus.PROOF and args.proof_out:
        emit_certificate(lb_proof_certificate(proof, budget), args.proof_out)
    logger.info("List Ramsey sweep finished", pattern=args.pattern, k=args.k, exact=exact)
    return EXIT_OK if exact else EXIT_UNKNOWN


def register(subparsers: argparse._SubParsersAction) -> None:
    exact = subparsers.add_parser("exact", help="Ordinary Ramsey number R(H, k)")
    exact.add_argument("--pattern", required=True, help="K3, K4^3, S3, M2 or an edge-list file")
    exact.add_argument("--colors", type=int, required=True)
    exact.add_argument("--n-max", type=int, default=64)
    add_budget_arguments(exact)
    exact.set_defaults(func=cmd_exact)

    listed = subparsers.add_parser("list-exact", help="List Ramsey number R_l(H, k)")
    listed.add_argument("--pattern", required=True)
    listed.add_argument("--k", type=int, required=True)
    listed.add_argument("--n-min", type=int, default=None)
    listed.add_argument("--n-max", type=int, required=True)
    listed.add_argument("--out", type=Path, default=None, help="Upper-witness certificate")
    listed.add_argument("--proof-out", type=Path, default=None, help="lb-proof certificate at n-1")
    add_budget_arguments(listed)
    listed.set_defaults(func=cmd_list_exact)
