"""
Certificate builders and the verifier that rechecks them from the payload alone
"""

import json
import math
from typing import Any, Callable, Dict, List, Optional, Sequence

import structlog
from pydantic import ValidationError

from src.bounds.certificates import RELATIVE_TOLERANCE, UnionBoundResult, certificate
from src.bounds.formulas import BoundResult, bound_grid, check_grid
from src.bounds.logspace import relative_error
from src.cli.io import to_json_value
from src.cli.schemas import (
    Certificate,
    CheckResult,
    DecompositionRecord,
    EdgeColoringRecord,
    HypergraphRecord,
    ListAssignmentRecord,
)
from src.core.config import settings
from src.core.exceptions import BudgetExhaustedError, CheckFailedError, InternalDefectError, ListRamseyError
from src.core.hypergraph import verify_list_coloring
from src.core.monochromatic import find_monochromatic
from src.decomp.decompositions import verify_decomposition
from src.solver.adversary import adversary_color
from src.solver.budget import SearchBudget, SearchStatus
from src.solver.ramsey import ListDecisionStatus, ListRamseyDecision, decide_list_lb
from src.witness.pipelines import WitnessResult

logger = structlog.get_logger()

UNKNOWN_DETAIL = "unknown"


def _check(name: str, passed: bool, detail: Optional[str] = None) -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), detail=detail)


def _normalized(data: Any) -> str:
    return json.dumps(to_json_value(data), sort_keys=True)


# Lower witnesses

def _lower_witness_checks(payload: Dict[str, Any], budget: Optional[SearchBudget]) -> List[CheckResult]:
    pattern = HypergraphRecord.model_validate(payload["pattern"]).to_hypergraph()
    lists = ListAssignmentRecord.model_validate(payload["lists"]).to_lists()
    coloring = EdgeColoringRecord.model_validate(payload["coloring"]).to_coloring()

    same_host = lists.host == coloring.host
    checks = [
        _check("same_host", same_host),
        _check("host_complete", lists.host.is_complete()),
        _check("uniformity_matches", pattern.uniformity == lists.host.uniformity),
    ]
    if not same_host:
        return checks
    checks.append(_check("list_compliant", verify_list_coloring(lists, coloring)))
    copy = find_monochromatic(pattern, coloring) if pattern.uniformity == lists.host.uniformity else None
    checks.append(
        _check(
            "no_monochromatic_pattern",
            copy is None and pattern.uniformity == lists.host.uniformity,
            None if copy is None else f"copy in color {copy.color} on {list(copy.image_edges)}",
        )
    )
    if payload.get("decomposition") is not None:
        decomposition = DecompositionRecord.model_validate(payload["decomposition"]).to_decomposition()
        report = verify_decomposition(decomposition)
        checks.append(_check("decomposition_valid", report.is_valid and decomposition.host == lists.host))
    return checks


def lower_witness_certificate(result: WitnessResult) -> Certificate:
    """Certificate for a list coloring with no monochromatic pattern"""
    payload: Dict[str, Any] = {
        "strategy": result.strategy.value,
        "pattern": HypergraphRecord.from_hypergraph(result.pattern).model_dump(),
        "lists": ListAssignmentRecord.from_lists(result.lists).model_dump(),
        "coloring": EdgeColoringRecord.from_coloring(result.coloring).model_dump(),
        "decomposition": (
            DecompositionRecord.from_decomposition(result.decomposition).model_dump()
            if result.decomposition is not None
            else None
        ),
    }
    if result.reduction is not None:
        payload["initial_potential"] = result.reduction.initial_potential
        payload["types"] = [list(pair) for pair in result.reduction.assignment.types]
    return _sealed("lower-witness", payload)


# Upper witnesses and proofs

def _upper_witness_checks(payload: Dict[str, Any], budget: Optional[SearchBudget]) -> List[CheckResult]:
    pattern = HypergraphRecord.model_validate(payload["pattern"]).to_hypergraph()
    lists = ListAssignmentRecord.model_validate(payload["lists"]).to_lists()
    checks = [
        _check("host_complete", lists.host.is_complete()),
        _check("list_size", lists.k == int(payload["k"])),
        _check("host_size", lists.host.vertex_count == int(payload["n"])),
    ]
    result = adversary_color(pattern, lists, budget)
    if result.status is SearchStatus.UNKNOWN:
        checks.append(_check("no_escaping_coloring", False, UNKNOWN_DETAIL))
    else:
        detail = None if result.proven_none else "a coloring avoids the pattern"
        checks.append(_check("no_escaping_coloring", result.proven_none, detail))
    return checks


def upper_witness_certificate(decision: ListRamseyDecision, budget: Optional[SearchBudget] = None) -> Certificate:
    """Certificate for k-lists on K_n that force the pattern"""
    if decision.status is not ListDecisionStatus.WITNESS or decision.lists is None:
        raise InternalDefectError("only witness decisions become upper-witness certificates")
    payload = {
        "pattern": HypergraphRecord.from_hypergraph(decision.pattern).model_dump(),
        "lists": ListAssignmentRecord.from_lists(decision.lists).model_dump(),
        "k": decision.k,
        "n": decision.n,
        "patterns_checked": decision.patterns_checked,
    }
    return _sealed("upper-witness", payload, budget)


def _lb_proof_checks(payload: Dict[str, Any], budget: Optional[SearchBudget]) -> List[CheckResult]:
    pattern = HypergraphRecord.model_validate(payload["pattern"]).to_hypergraph()
    decision = decide_list_lb(pattern, int(payload["k"]), int(payload["n"]), budget)
    if decision.status is ListDecisionStatus.UNKNOWN:
        return [_check("every_assignment_escapes", False, UNKNOWN_DETAIL)]
    return [
        _check("every_assignment_escapes", decision.status is ListDecisionStatus.PROOF, decision.status.value),
        _check("patterns_checked", decision.patterns_checked == int(payload["patterns_checked"])),
    ]


def lb_proof_certificate(decision: ListRamseyDecision, budget: Optional[SearchBudget] = None) -> Certificate:
    """Certificate that every k-list assignment on K_n admits a good coloring"""
    if decision.status is not ListDecisionStatus.PROOF:
        raise InternalDefectError("only proof decisions become lb-proof certificates")
    payload = {
        "pattern": HypergraphRecord.from_hypergraph(decision.pattern).model_dump(),
        "k": decision.k,
        "n": decision.n,
        "patterns_checked": decision.patterns_checked,
        "transcript_hash": decision.transcript_hash,
    }
    return _sealed("lb-proof", payload, budget)


# Bound tables and union bounds

def bound_row_record(row: BoundResult) -> Dict[str, Any]:
    return {
        "family": row.family,
        "source": row.source,
        "params": row.params,
        "lower": row.lower,
        "upper": row.upper,
        "regime": row.regime,
        "flags": list(row.flags),
        "ordinary": row.ordinary,
    }


def _bound_table_checks(payload: Dict[str, Any], budget: Optional[SearchBudget]) -> List[CheckResult]:
    rows = bound_grid([int(r) for r in payload["r_values"]], [int(k) for k in payload["k_values"]])
    recomputed = [bound_row_record(row) for row in rows]
    problems = check_grid(rows)
    return [
        _check("rows_recomputed", _normalized(recomputed) == _normalized(payload["rows"])),
        _check("grid_consistent", not problems, "; ".join(problems[:3]) or None),
    ]


def bound_table_certificate(
    rows: Sequence[BoundResult], r_values: Sequence[int], k_values: Sequence[int]
) -> Certificate:
    payload = {
        "r_values": list(r_values),
        "k_values": list(k_values),
        "rows": [bound_row_record(row) for row in rows],
    }
    return _sealed("bound-table", payload)


def _union_bound_checks(payload: Dict[str, Any], budget: Optional[SearchBudget]) -> List[CheckResult]:
    result = certificate(payload["kind"], payload["params"])
    stored = float(payload["log_value"])
    if math.isinf(stored) or math.isinf(result.log_value):
        agrees = stored == result.log_value
    else:
        agrees = relative_error(result.log_value, stored) < RELATIVE_TOLERANCE
    checks = [_check("log_value_recomputed", agrees, f"{result.log_value!r}")]
    checks.append(
        _check("exact_value_recomputed", _normalized(result.exact_value) == _normalized(payload.get("exact_value")))
    )
    checks.extend(_check(name, passed) for name, passed in sorted(result.checks.items()))
    checks.append(_check("stored_verdict", bool(payload["passed"]) == result.passed))
    return checks


def union_bound_certificate(result: UnionBoundResult) -> Certificate:
    if not result.passed:
        raise CheckFailedError(f"{result.kind} condition does not hold (log value {result.log_value:.6g})")
    payload = {
        "kind": result.kind,
        "params": result.params,
        "log_value": result.log_value,
        "passed": result.passed,
        "exact_value": result.exact_value,
        "notes": result.notes,
    }
    return _sealed("union-bound", payload)


# Dispatch

_CHECKERS: Dict[str, Callable[[Dict[str, Any], Optional[SearchBudget]], List[CheckResult]]] = {
    "lower-witness": _lower_witness_checks,
    "upper-witness": _upper_witness_checks,
    "lb-proof": _lb_proof_checks,
    "bound-table": _bound_table_checks,
    "union-bound": _union_bound_checks,
}


def verify_certificate(cert: Certificate, budget: Optional[SearchBudget] = None) -> List[CheckResult]:
    """
    Recompute every check of a certificate from its payload

    Stored checks are ignored. A payload that cannot be decoded yields a single failed
    payload_well_formed check instead of an exception.
    """
    checks = [_check("version_supported", cert.version == settings.CERTIFICATE_VERSION, cert.version)]
    try:
        checks.extend(_CHECKERS[cert.kind](cert.payload, budget))
    except (KeyError, TypeError, ValueError, ValidationError, ListRamseyError) as exc:
        if isinstance(exc, ListRamseyError) and exc.exit_code == InternalDefectError.exit_code:
            raise
        checks.append(_check("payload_well_formed", False, f"{type(exc).__name__}: {exc}"))
    logger.info(
        "Certificate verified",
        kind=cert.kind,
        passed=all(c.passed for c in checks),
        failed=[c.name for c in checks if not c.passed],
    )
    return checks


def has_unknown(checks: Sequence[CheckResult]) -> bool:
    return any(not c.passed and c.detail == UNKNOWN_DETAIL for c in checks)


def _sealed(kind: str, payload: Dict[str, Any], budget: Optional[SearchBudget] = None) -> Certificate:
    """Attach freshly computed checks; a certificate that fails its own checks is never returned"""
    payload = json.loads(json.dumps(to_json_value(payload), sort_keys=True))
    draft = Certificate(version=settings.CERTIFICATE_VERSION, kind=kind, payload=payload)
    checks = verify_certificate(draft, budget)
    sealed = Certificate(version=draft.version, kind=kind, payload=payload, checks=checks)
    if not sealed.passed:
        failed = [c.name for c in checks if not c.passed]
        if has_unknown(checks):
            raise BudgetExhaustedError(f"{kind} certificate could not be rechecked within budget")
        logger.error("Fresh certificate failed self-verification", kind=kind, failed=failed)
        raise InternalDefectError(f"{kind} certificate failed its own checks: {failed}")
    return sealed
