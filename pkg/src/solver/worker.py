"""
Process pool for independent searches; results come back in input order
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import structlog

from src.core.config import settings
from src.core.hypergraph import Hypergraph, ListAssignment
from src.solver.adversary import AdversaryResult, adversary_color
from src.solver.budget import SearchBudget

logger = structlog.get_logger()

T = TypeVar("T")
R = TypeVar("R")


class SearchWorker:
    """Runs a picklable function over inputs, in-process for one job"""

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = max(1, jobs or settings.DEFAULT_JOBS)

    def map(self, func: Callable[[T], R], items: Sequence[T]) -> List[R]:
        if self.jobs == 1 or len(items) < 2:
            return [func(item) for item in items]
        chunksize = max(1, len(items) // (4 * self.jobs))
        logger.debug("Dispatching to process pool", jobs=self.jobs, items=len(items))
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            return list(pool.map(func, items, chunksize=chunksize))


AdversaryTask = Tuple[Hypergraph, ListAssignment, SearchBudget]


def run_adversary_task(task: AdversaryTask) -> AdversaryResult:
    pattern, lists, budget = task
    return adversary_color(pattern, lists, budget)
