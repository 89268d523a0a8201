"""
Ordinary colorings without a monochromatic pattern, used as type templates
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from src.core.exceptions import InternalDefectError, InvalidInputError
from src.core.hypergraph import EdgeColoring, Hypergraph, clique, complete_hypergraph, matching
from src.core.monochromatic import find_monochromatic

logger = structlog.get_logger()


@dataclass(frozen=True)
class TypeAssignment:
    """A type in [m] for every universe color"""

    m: int
    types: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for color, tau in self.types:
            if not 0 <= tau < self.m:
                raise InvalidInputError(f"type {tau} of color {color} outside [0, {self.m})")

    @property
    def universe(self) -> Tuple[int, ...]:
        return tuple(c for c, _ in self.types)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.types)


@dataclass(frozen=True)
class BaseColoring:
    """An m-coloring of a host, checked to contain no monochromatic copy of the pattern"""

    coloring: EdgeColoring
    pattern: Hypergraph
    m: int
    guarantee: bool = False

    @classmethod
    def checked(cls, coloring: EdgeColoring, pattern: Hypergraph, m: int) -> "BaseColoring":
        if any(not 0 <= c < m for c in coloring.colors):
            raise InvalidInputError(f"base colors must lie in [0, {m})")
        if find_monochromatic(pattern, coloring) is not None:
            logger.error("Base coloring contains the pattern", m=m)
            raise InternalDefectError("base coloring contains a monochromatic copy of its pattern")
        return cls(coloring, pattern, m, guarantee=True)

    @property
    def host(self) -> Hypergraph:
        return self.coloring.host


def cockayne_lorimer_blocks(r: int, t: int, n: int) -> List[int]:
    """Block index of every vertex: t-1 blocks of size r-1, then the final block"""
    if r < 2:
        return [t - 1] * n
    return [min(v // (r - 1), t - 1) for v in range(n)]


@lru_cache(maxsize=16)
def cockayne_lorimer_coloring(r: int, t: int, n: int) -> BaseColoring:
    """
    Extremal t-coloring of K_n with no monochromatic rK_2

    Args:
        r: Matching size
        t: Number of colors
        n: Host size, at most rt + r - t

    Returns:
        Base coloring where an edge takes the smallest block index among its endpoints
    """
    if r < 1 or t < 1:
        raise InvalidInputError("r and t must be positive")
    if n > r * t + r - t:
        raise InvalidInputError(f"n={n} exceeds R(rK_2, t) - 1 = {r * t + r - t}")

    block = cockayne_lorimer_blocks(r, t, n)
    host = complete_hypergraph(n, 2)
    colors = tuple(min(block[u], block[v]) for u, v in host.edges)
    base = BaseColoring.checked(EdgeColoring(host, colors), matching(r), t)
    logger.info("Cockayne-Lorimer coloring built", r=r, t=t, n=n)
    return base


def _partition_levels(n: int, r: int) -> Tuple[List[Tuple[int, ...]], ...]:
    """Contiguous vertex sets at every recursion level"""
    levels = []
    current = [tuple(range(n))]
    while any(len(s) > 1 for s in current):
        levels.append(current)
        nxt = []
        for s in current:
            size = -(-len(s) // r)
            nxt.extend(s[i:i + size] for i in range(0, len(s), size))
        current = nxt
    return tuple(levels)


def chromatic_partition_coloring(
    n: int, r: int, uniformity: int = 2, pattern: Optional[Hypergraph] = None
) -> BaseColoring:
    """
    Recursive r-partition coloring of K_n^{(l)}

    Each set is cut into r contiguous chunks of size ceil(len/r); edges inside the set
    but not inside one chunk get the current level as color, then every chunk recurses.
    Every color class is r-partite, so it has no copy of a pattern with chromatic
    number above r.

    Args:
        n: Host size
        r: Branching
        uniformity: Edge size l
        pattern: Pattern to certify; defaults to K_{r(l-1)+1}^{(l)}

    Returns:
        Base coloring with ceil(log_r n) colors
    """
    if n < 1 or r < 2:
        raise InvalidInputError("chromatic partition coloring needs n >= 1 and r >= 2")

    host = complete_hypergraph(n, uniformity)
    levels = _partition_levels(n, r)
    chunk_of: List[Sequence[int]] = []
    for level in levels:
        label = [0] * n
        for idx, s in enumerate(level):
            size = -(-len(s) // r)
            for pos, v in enumerate(s):
                label[v] = idx * r + pos // size
        chunk_of.append(label)

    colors = []
    for edge in host.edges:
        for level, label in enumerate(chunk_of):
            if len({label[v] for v in edge}) > 1:
                colors.append(level)
                break
        else:
            raise InternalDefectError(f"edge {edge} was never split")

    m = max(1, len(levels))
    pattern = pattern or clique(r * (uniformity - 1) + 1, uniformity)
    coloring = EdgeColoring(host, tuple(colors))
    if find_monochromatic(pattern, coloring) is not None:
        raise InvalidInputError(f"pattern embeds in an {r}-partite class; its chromatic number is at most {r}")
    base = BaseColoring(coloring, pattern, m, guarantee=True)
    logger.info("Chromatic partition coloring built", n=n, r=r, uniformity=uniformity, colors=m)
    return base
