"""
Pytest configuration and fixtures
"""

import random
from typing import Callable, Optional

import numpy as np
import pytest
import structlog

from src.core.hypergraph import EdgeColoring, Hypergraph, ListAssignment, complete_hypergraph
from src.solver.budget import SearchBudget


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale runs (deselect with -m 'not slow')")


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop any logging configuration a CLI run installed"""
    yield
    structlog.reset_defaults()


@pytest.fixture
def rng() -> random.Random:
    """Seeded stdlib generator"""
    return random.Random(20240611)


@pytest.fixture
def np_rng() -> np.random.Generator:
    """Seeded numpy generator"""
    return np.random.default_rng(20240611)


@pytest.fixture
def k5() -> Hypergraph:
    return complete_hypergraph(5, 2)


@pytest.fixture
def k6() -> Hypergraph:
    return complete_hypergraph(6, 2)


@pytest.fixture
def small_budget() -> SearchBudget:
    """Budget generous enough for every desk-scale test"""
    return SearchBudget(node_limit=2_000_000, time_limit_seconds=300.0, memory_limit_bytes=8 * 1024**3)


@pytest.fixture
def make_lists() -> Callable[..., ListAssignment]:
    """Factory for seeded random k-lists drawn from a universe of colors"""

    def build(host: Hypergraph, k: int, seed: int, universe: Optional[int] = None) -> ListAssignment:
        gen = np.random.default_rng(seed)
        size = universe or 2 * k
        drawn = tuple(tuple(int(c) for c in gen.choice(size, size=k, replace=False)) for _ in host.edges)
        return ListAssignment(host, k, drawn)

    return build


@pytest.fixture
def make_coloring() -> Callable[..., EdgeColoring]:
    """Factory for seeded random colorings"""

    def build(host: Hypergraph, colors: int, seed: int) -> EdgeColoring:
        gen = random.Random(seed)
        return EdgeColoring(host, tuple(gen.randrange(colors) for _ in host.edges))

    return build
