"""
Exact Ramsey and list Ramsey decisions on tiny hosts
"""

import enum
import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Deque, Dict, List, Optional

import numpy as np
import structlog

from src.core.exceptions import BudgetExhaustedError, InvalidInputError
from src.core.hypergraph import (
    EdgeColoring,
    Hypergraph,
    ListAssignment,
    complete_hypergraph,
)
from src.solver.adversary import AdversaryResult, adversary_color
from src.solver.budget import BudgetTracker, SearchBudget, SearchStatus
from src.solver.canonical import (
    CanonicalListPattern,
    PatternKey,
    canonical_key,
    enumerate_canonical_patterns,
)
from src.solver.worker import SearchWorker, run_adversary_task

logger = structlog.get_logger()

COLORING_CACHE_SIZE = 4096


class ListDecisionStatus(str, enum.Enum):
    """Verdicts of the list Ramsey deciders"""

    WITNESS = "witness"
    NO_WITNESS = "no-witness"
    PROOF = "proof"
    COUNTEREXAMPLE = "counterexample"
    UNKNOWN = "unknown"


@dataclass
class ListRamseyDecision:
    """Outcome of decide_list_ub or decide_list_lb at one host size"""

    status: ListDecisionStatus
    pattern: Hypergraph
    k: int
    n: int
    lists: Optional[ListAssignment] = None
    patterns_checked: int = 0
    patterns_unknown: int = 0
    searches_run: int = 0
    refinements: int = 0
    transcript_hash: Optional[str] = None
    exhausted: bool = False

    @property
    def resolved(self) -> bool:
        return self.status is not ListDecisionStatus.UNKNOWN


@dataclass
class _ScanOutcome:
    undefeated: Optional[CanonicalListPattern] = None
    checked: int = 0
    unknown: int = 0
    searches: int = 0
    refinements: int = 0
    exhausted: bool = False
    transcript: Any = field(default_factory=hashlib.sha256)


def _compliant(coloring: EdgeColoring, lists: ListAssignment) -> bool:
    return all(c in pal for c, pal in zip(coloring.colors, lists.lists))


def _scan_patterns(
    pattern: Hypergraph,
    k: int,
    n: int,
    budget: Optional[SearchBudget],
    max_distinct: Optional[int],
    jobs: Optional[int],
) -> _ScanOutcome:
    """
    Walk canonical list patterns in order until one admits no good coloring

    Good colorings found along the way are kept; a later pattern that one of them
    already respects is defeated without a search. Searches are dispatched in batches
    and their results consumed in enumeration order.
    """
    budget = budget or SearchBudget.default()
    host = complete_hypergraph(n, pattern.uniformity)
    worker = SearchWorker(jobs)
    batch_size = 1 if worker.jobs == 1 else 16 * worker.jobs
    tracker = BudgetTracker(budget)
    good: Deque[EdgeColoring] = deque(maxlen=COLORING_CACHE_SIZE)
    outcome = _ScanOutcome()

    patterns = enumerate_canonical_patterns(host, k, max_distinct=max_distinct, tracker=tracker)
    pending: List[CanonicalListPattern] = []

    def flush() -> bool:
        tasks = [(pattern, p.to_lists(), budget) for p in pending]
        results: List[AdversaryResult] = worker.map(run_adversary_task, tasks)
        outcome.searches += len(results)
        for candidate, result in zip(pending, results):
            outcome.transcript.update(repr((candidate.key, result.status.value)).encode())
            if result.found:
                good.append(result.coloring)
                outcome.refinements += 1
            elif result.proven_none:
                outcome.undefeated = candidate
                return True
            else:
                outcome.unknown += 1
        pending.clear()
        return False

    try:
        for candidate in patterns:
            outcome.checked += 1
            lists = candidate.to_lists()
            if any(_compliant(c, lists) for c in good):
                continue
            pending.append(candidate)
            if len(pending) >= batch_size and flush():
                return outcome
    except BudgetExhaustedError as exc:
        logger.warning("Pattern enumeration stopped", reason=str(exc), checked=outcome.checked)
        outcome.exhausted = True

    if pending:
        flush()
    return outcome


def decide_list_ub(
    pattern: Hypergraph,
    k: int,
    n: int,
    budget: Optional[SearchBudget] = None,
    uniform_only: bool = False,
    jobs: Optional[int] = None,
) -> ListRamseyDecision:
    """
    Look for k-lists on K_n that force a monochromatic copy of the pattern

    Candidates are proposed uniform first. A candidate respected by a coloring already
    collected is skipped; otherwise the adversary either returns a new good coloring,
    which refines the collection, or proves the candidate is a witness.

    Args:
        pattern: Pattern hypergraph H
        k: List size
        n: Host size
        budget: Limits for the enumeration and for each adversary search
        uniform_only: Restrict candidates to uniform lists (ordinary Ramsey)
        jobs: Worker processes for the adversary searches

    Returns:
        WITNESS with the lists, NO_WITNESS when every candidate was defeated, or UNKNOWN
    """
    outcome = _scan_patterns(pattern, k, n, budget, 1 if uniform_only else None, jobs)
    decision = ListRamseyDecision(
        ListDecisionStatus.UNKNOWN,
        pattern,
        k,
        n,
        patterns_checked=outcome.checked,
        patterns_unknown=outcome.unknown,
        searches_run=outcome.searches,
        refinements=outcome.refinements,
        transcript_hash=outcome.transcript.hexdigest(),
        exhausted=outcome.exhausted,
    )
    if outcome.undefeated is not None:
        decision.status = ListDecisionStatus.WITNESS
        decision.lists = outcome.undefeated.to_lists()
    elif not outcome.exhausted and outcome.unknown == 0:
        decision.status = ListDecisionStatus.NO_WITNESS
    logger.info("List upper bound decided", status=decision.status.value, n=n, k=k, checked=outcome.checked)
    return decision


def decide_list_lb(
    pattern: Hypergraph,
    k: int,
    n: int,
    budget: Optional[SearchBudget] = None,
    jobs: Optional[int] = None,
) -> ListRamseyDecision:
    """
    Show that every k-list assignment on K_n admits a coloring with no monochromatic copy

    Returns:
        PROOF with the number of canonical patterns, COUNTEREXAMPLE with the first
        undefeatable lists, or UNKNOWN with progress counts
    """
    outcome = _scan_patterns(pattern, k, n, budget, None, jobs)
    decision = ListRamseyDecision(
        ListDecisionStatus.UNKNOWN,
        pattern,
        k,
        n,
        patterns_checked=outcome.checked,
        patterns_unknown=outcome.unknown,
        searches_run=outcome.searches,
        refinements=outcome.refinements,
        transcript_hash=outcome.transcript.hexdigest(),
        exhausted=outcome.exhausted,
    )
    if outcome.undefeated is not None:
        decision.status = ListDecisionStatus.COUNTEREXAMPLE
        decision.lists = outcome.undefeated.to_lists()
    elif not outcome.exhausted and outcome.unknown == 0:
        decision.status = ListDecisionStatus.PROOF
    logger.info("List lower bound decided", status=decision.status.value, n=n, k=k, checked=outcome.checked)
    return decision


def ramsey_exact(
    pattern: Hypergraph, k: int, n_max: int, budget: Optional[SearchBudget] = None
) -> int:
    """
    Ordinary Ramsey number R(H, k) by searching n upward from v(H)

    Args:
        pattern: Pattern hypergraph H
        k: Number of colors
        n_max: Largest host size tried

    Returns:
        Least n for which every k-coloring of K_n contains a monochromatic H

    Raises:
        BudgetExhaustedError: A search ran out of budget or n_max was passed
    """
    if k < 1:
        raise InvalidInputError("at least one color is needed")
    colors = tuple(range(k))
    for n in range(max(pattern.vertex_count, 1), n_max + 1):
        host = complete_hypergraph(n, pattern.uniformity)
        result = adversary_color(pattern, ListAssignment.uniform(host, colors), budget)
        logger.info("Ramsey host checked", n=n, status=result.status.value, nodes=result.nodes)
        if result.proven_none:
            return n
        if result.status is SearchStatus.UNKNOWN:
            raise BudgetExhaustedError(f"search at n={n} ran out of budget ({result.exhausted_reason})")
    raise BudgetExhaustedError(f"no resolution up to n_max={n_max}")


def pad_list_assignment(lists: ListAssignment, n: int) -> ListAssignment:
    """
    Extend lists on K_m^{(l)} to K_n^{(l)}, n >= m

    Old edges keep their lists; new edges share one list of fresh colors. Every
    coloring of the larger host restricts to a coloring of the old one, so a witness
    stays a witness.
    """
    host = lists.host
    if n < host.vertex_count:
        raise InvalidInputError(f"cannot pad from {host.vertex_count} down to {n} vertices")
    bigger = complete_hypergraph(n, host.uniformity)
    start = (max(lists.universe) + 1) if lists.universe else 0
    fresh = tuple(range(start, start + lists.k))
    old = lists.as_mapping()
    return ListAssignment(bigger, lists.k, tuple(old.get(e, fresh) for e in bigger.edges))


@dataclass
class SweepReport:
    """Random list assignments tried against the adversary"""

    samples: int
    distinct_patterns: int
    undefeated: int
    unknown: int
    first_undefeated: Optional[ListAssignment] = None


def sweep_random_lists(
    pattern: Hypergraph,
    k: int,
    n: int,
    samples: int,
    seed: int,
    universe_size: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> SweepReport:
    """
    Draw random k-lists on K_n and count the ones no coloring defeats

    Each edge receives a uniformly random k-subset of the universe. Repeated canonical
    patterns reuse the first verdict.

    Args:
        pattern: Pattern hypergraph H
        k: List size
        n: Host size
        samples: Number of random assignments
        seed: Seed of the numpy generator
        universe_size: Colors to draw from; defaults to 2k
    """
    universe = universe_size or 2 * k
    if universe < k:
        raise InvalidInputError(f"universe of {universe} colors cannot hold {k}-lists")
    host = complete_hypergraph(n, pattern.uniformity)
    rng = np.random.default_rng(seed)
    verdicts: Dict[PatternKey, SearchStatus] = {}
    report = SweepReport(samples, 0, 0, 0)

    for _ in range(samples):
        drawn = tuple(
            tuple(int(c) for c in rng.choice(universe, size=k, replace=False))
            for _ in host.edges
        )
        lists = ListAssignment(host, k, drawn)
        key = canonical_key(lists)
        status = verdicts.get(key)
        if status is None:
            status = adversary_color(pattern, lists, budget).status
            verdicts[key] = status
        if status is SearchStatus.PROVEN_NONE:
            report.undefeated += 1
            if report.first_undefeated is None:
                report.first_undefeated = lists
        elif status is SearchStatus.UNKNOWN:
            report.unknown += 1

    report.distinct_patterns = len(verdicts)
    logger.info(
        "Random list sweep finished",
        samples=samples,
        distinct=report.distinct_patterns,
        undefeated=report.undefeated,
    )
    return report


def is_witness(pattern: Hypergraph, lists: ListAssignment, budget: Optional[SearchBudget] = None) -> bool:
    """Re-verify that no L-coloring avoids the pattern"""
    return adversary_color(pattern, lists, budget).proven_none
