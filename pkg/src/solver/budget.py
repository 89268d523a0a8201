"""
Search budgets and tri-state search outcomes
"""

import enum
import resource
import time
from dataclasses import dataclass
from typing import Optional

import structlog

from src.core.config import settings
from src.core.exceptions import InvalidInputError

logger = structlog.get_logger()


class SearchStatus(str, enum.Enum):
    """Outcome of a bounded search"""

    FOUND = "found"
    PROVEN_NONE = "proven-none"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchBudget:
    """Node, wall-clock and memory limits of one search"""

    node_limit: int
    time_limit_seconds: float
    memory_limit_bytes: int

    def __post_init__(self):
        if self.node_limit <= 0 or self.time_limit_seconds <= 0 or self.memory_limit_bytes <= 0:
            raise InvalidInputError("budget limits must be positive")

    @classmethod
    def default(cls) -> "SearchBudget":
        """Budget taken from the environment settings"""
        return cls(
            node_limit=settings.DEFAULT_NODE_LIMIT,
            time_limit_seconds=settings.DEFAULT_TIME_LIMIT_SECONDS,
            memory_limit_bytes=settings.memory_limit_bytes,
        )

    def with_nodes(self, node_limit: int) -> "SearchBudget":
        return SearchBudget(node_limit, self.time_limit_seconds, self.memory_limit_bytes)


class BudgetTracker:
    """Counts nodes against a budget; memory is sampled every few thousand nodes"""

    MEMORY_SAMPLE_INTERVAL = 4096

    def __init__(self, budget: Optional[SearchBudget] = None):
        self.budget = budget or SearchBudget.default()
        self.nodes = 0
        self.started = time.monotonic()
        self.exhausted_reason: Optional[str] = None

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started

    @property
    def exhausted(self) -> bool:
        return self.exhausted_reason is not None

    def tick(self) -> bool:
        """Count one node; returns False once the budget is spent"""
        if self.exhausted_reason:
            return False
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            self.exhausted_reason = "nodes"
        elif self.nodes % 256 == 0 and self.elapsed > self.budget.time_limit_seconds:
            self.exhausted_reason = "time"
        elif self.nodes % self.MEMORY_SAMPLE_INTERVAL == 0 and _resident_bytes() > self.budget.memory_limit_bytes:
            self.exhausted_reason = "memory"
        if self.exhausted_reason:
            logger.warning("Search budget exhausted", reason=self.exhausted_reason, nodes=self.nodes)
            return False
        return True


def _resident_bytes() -> int:
    # ru_maxrss is reported in kilobytes on Linux
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
