"""
Monte-Carlo companion to the random-list upper bound argument
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import structlog

from src.core.exceptions import ParameterDomainError
from src.core.hypergraph import Hypergraph, ListAssignment, complete_hypergraph
from src.solver.budget import SearchBudget, SearchStatus
from src.solver.worker import SearchWorker, run_adversary_task

logger = structlog.get_logger()


@dataclass
class ProbeReport:
    """Outcome counts over seeded random list assignments"""

    samples: int
    defeating: int
    escapable: int
    unknown: int
    seed: int

    @property
    def decided(self) -> int:
        return self.defeating + self.escapable

    @property
    def failure_rate(self) -> Optional[float]:
        """Share of decided samples whose lists no coloring escapes; None if nothing was decided"""
        if self.decided == 0:
            return None
        return self.defeating / self.decided


def random_lists(host: Hypergraph, k: int, universe: int, rng: np.random.Generator) -> ListAssignment:
    """Every edge gets a uniformly random k-subset of range(universe)"""
    drawn = tuple(
        tuple(int(c) for c in rng.choice(universe, size=k, replace=False)) for _ in host.edges
    )
    return ListAssignment(host, k, drawn)


def probe_upper(
    pattern: Hypergraph,
    k: int,
    t: int,
    n: int,
    samples: int,
    seed: int,
    budget: Optional[SearchBudget] = None,
    jobs: Optional[int] = None,
) -> ProbeReport:
    """
    Estimate how often random k-lists from k+t colors force a monochromatic pattern on K_n

    One child generator per sample is spawned from the seed, so the outcome does not
    depend on the worker count. Searches that exhaust their budget are counted as
    unknown and left out of the rate.

    Args:
        pattern: Pattern H
        k: List size
        t: Extra colors in the universe
        n: Host size
        samples: Number of draws
        seed: Root seed
        budget: Budget per adversary search
        jobs: Worker processes
    """
    if k < 1 or t < 0 or samples < 1:
        raise ParameterDomainError("need k >= 1, t >= 0 and at least one sample")
    host = complete_hypergraph(n, pattern.uniformity)
    budget = budget or SearchBudget.default()

    children = np.random.SeedSequence(seed).spawn(samples)
    tasks = [(pattern, random_lists(host, k, k + t, np.random.default_rng(child)), budget) for child in children]
    results = SearchWorker(jobs).map(run_adversary_task, tasks)

    statuses: List[SearchStatus] = [result.status for result in results]
    report = ProbeReport(
        samples=samples,
        defeating=statuses.count(SearchStatus.PROVEN_NONE),
        escapable=statuses.count(SearchStatus.FOUND),
        unknown=statuses.count(SearchStatus.UNKNOWN),
        seed=seed,
    )
    logger.info(
        "Probe finished",
        n=n,
        k=k,
        t=t,
        samples=samples,
        defeating=report.defeating,
        unknown=report.unknown,
    )
    return report
