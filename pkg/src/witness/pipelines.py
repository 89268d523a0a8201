"""
End-to-end lower-bound witness pipelines
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import structlog

from src.core.exceptions import InternalDefectError, InvalidInputError
from src.core.hypergraph import EdgeColoring, Hypergraph, ListAssignment, matching, star, verify_list_coloring
from src.core.monochromatic import find_monochromatic
from src.decomp.decompositions import Decomposition, cycle_decompose, star_block_partition, walecki
from src.witness.base_colorings import BaseColoring, chromatic_partition_coloring, cockayne_lorimer_coloring
from src.witness.stars import star5_coloring, star_free_coloring
from src.witness.types import TypeReductionResult, type_reduction

logger = structlog.get_logger()


class WitnessStrategy(str, enum.Enum):
    """Lower-bound constructions"""

    STAR_COMPOSE = "star-compose"
    STAR5 = "star5"
    TYPE_REDUCTION = "type-reduction"


@dataclass
class WitnessResult:
    """A list coloring with no monochromatic pattern and how it was built"""

    strategy: WitnessStrategy
    pattern: Hypergraph
    lists: ListAssignment
    coloring: EdgeColoring
    decomposition: Optional[Decomposition] = None
    base: Optional[BaseColoring] = None
    reduction: Optional[TypeReductionResult] = None

    @property
    def n(self) -> int:
        return self.lists.host.vertex_count


def _confirm(pattern: Hypergraph, lists: ListAssignment, coloring: EdgeColoring) -> None:
    if not verify_list_coloring(lists, coloring):
        raise InternalDefectError("witness coloring ignores its lists")
    if find_monochromatic(pattern, coloring) is not None:
        raise InternalDefectError("witness coloring contains the pattern")


def star_witness_host(r: int, k: int) -> int:
    """Largest host the star constructions cover: R_l(K_{1,r}, k) exceeds it"""
    if k == 2:
        if r == 3:
            return 5
        return 2 * r - 2 if r % 2 == 0 else 2 * r - 1
    return (r - 1) * k


def star_decomposition_for(r: int, k: int, n: int) -> Decomposition:
    """Pick the decomposition of K_n whose pieces each vertex meets at most r-1 times"""
    if k == 2 and r % 2 == 0 and n == 2 * r - 2:
        return walecki(n)
    if k == 2 and r % 2 == 1 and r >= 5 and n == 2 * r - 1:
        return cycle_decompose(n, r - 1)
    if n == (r - 1) * k:
        return star_block_partition(r, k)
    raise InvalidInputError(f"no star decomposition of K_{n} for r={r}, k={k}")


def star_lower_witness(r: int, k: int, lists: ListAssignment) -> WitnessResult:
    """Star-free list coloring of the lists' host by decomposition and composition"""
    n = lists.host.vertex_count
    pattern = star(r)
    if k == 2 and r == 3 and n == 5:
        coloring = star5_coloring(lists)
        _confirm(pattern, lists, coloring)
        return WitnessResult(WitnessStrategy.STAR5, pattern, lists, coloring)

    decomposition = star_decomposition_for(r, k, n)
    coloring = star_free_coloring(decomposition, lists, k, r)
    _confirm(pattern, lists, coloring)
    return WitnessResult(WitnessStrategy.STAR_COMPOSE, pattern, lists, coloring, decomposition=decomposition)


def types_for_host(n: int, k: int, uniformity: int) -> int:
    """floor(k / (l log n)) types keep the union bound below 1 on K_n^{(l)}"""
    if n < 2:
        raise InvalidInputError("host needs at least two vertices")
    return math.floor(k / (uniformity * math.log(n)))


def matching_pipeline_parameters(r: int, k: int) -> Tuple[int, int]:
    """
    Types t = floor(k / (2 log rk)) and host size for the matching construction

    Returns:
        (t, n) with n = (r-1)t + r, or the trivial host 2r-1 when t < 2
    """
    if r < 1 or k < 1:
        raise InvalidInputError("r and k must be positive")
    t = math.floor(k / (2 * math.log(r * k))) if r * k > 1 else 0
    if t < 2:
        return t, 2 * r - 1
    return t, max(2 * r - 1, (r - 1) * t + r)


def matching_lower_witness(r: int, k: int, lists: ListAssignment) -> WitnessResult:
    """
    List coloring of K_n with no monochromatic rK_2 via type reduction

    Args:
        r: Matching size
        k: List size
        lists: k-lists on K_n with n from matching_pipeline_parameters
    """
    t, n = matching_pipeline_parameters(r, k)
    if lists.host.vertex_count != n:
        raise InvalidInputError(f"matching witness for r={r}, k={k} lives on K_{n}")
    base = cockayne_lorimer_coloring(r, t if t >= 2 else 1, n)
    reduction = type_reduction(base, lists)
    coloring = reduction.require()
    _confirm(base.pattern, lists, coloring)
    logger.info("Matching witness built", r=r, k=k, t=t, n=n)
    return WitnessResult(
        WitnessStrategy.TYPE_REDUCTION, matching(r), lists, coloring, base=base, reduction=reduction
    )


def chromatic_lower_witness(
    pattern: Hypergraph, r: int, lists: ListAssignment
) -> WitnessResult:
    """
    List coloring with no monochromatic copy of a pattern of chromatic number above r

    The host size is whatever the lists live on; the union-bound condition is reported
    through the reduction's initial potential instead of being fixed in advance.
    """
    host = lists.host
    if pattern.uniformity != host.uniformity:
        raise InvalidInputError("pattern and host uniformity differ")
    base = chromatic_partition_coloring(host.vertex_count, r, host.uniformity, pattern)
    reduction = type_reduction(base, lists)
    coloring = reduction.require()
    _confirm(pattern, lists, coloring)
    return WitnessResult(
        WitnessStrategy.TYPE_REDUCTION, pattern, lists, coloring, base=base, reduction=reduction
    )
