"""
Type reduction: transfer a good ordinary coloring to a good list coloring
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import structlog

from src.core.exceptions import HostMismatchError, InternalDefectError, TypeReductionFailure
from src.core.hypergraph import Edge, EdgeColoring, ListAssignment
from src.witness.base_colorings import BaseColoring, TypeAssignment

logger = structlog.get_logger()

# slack for float accumulation in the monotonicity check
POTENTIAL_TOLERANCE = 1e-9


@dataclass
class TypeReductionResult:
    """Types chosen for every color, the potential trace and the resulting coloring"""

    assignment: TypeAssignment
    initial_potential: float
    final_potential: float
    coloring: Optional[EdgeColoring] = None
    failed_edge: Optional[Edge] = None
    failed_type: Optional[int] = None
    potentials: List[float] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.coloring is not None

    @property
    def guaranteed(self) -> bool:
        """The union bound alone promised success"""
        return self.initial_potential < 1.0

    def require(self) -> EdgeColoring:
        if self.coloring is None:
            raise TypeReductionFailure(self.failed_edge, self.failed_type)
        return self.coloring


def type_reduction(base: BaseColoring, lists: ListAssignment) -> TypeReductionResult:
    """
    Assign types to colors greedily so every edge keeps a list color of its base type

    With q = 1 - 1/m, an edge with u undecided list colors and no match yet fails a
    uniform random completion with probability q^u. Colors are decided in ascending
    order; each takes the type that minimizes the sum of these probabilities, which is
    the type maximizing the sum of q^(u-1) over the affected edges of that base color.
    Ties go to the smaller type.

    Args:
        base: Coloring of the host with colors in [m]
        lists: List assignment on the same host

    Returns:
        Result whose coloring picks, per edge, the smallest list color of its base type;
        on failure the first edge without such a color is reported
    """
    if base.host != lists.host:
        raise HostMismatchError("base coloring and lists live on different hosts")

    m = base.m
    q = 1.0 - 1.0 / m
    base_colors = base.coloring.colors
    undecided = [len(pal) for pal in lists.lists]
    matched = [False] * len(undecided)

    holders: Dict[int, List[int]] = {}
    for i, palette in enumerate(lists.lists):
        for c in palette:
            holders.setdefault(c, []).append(i)

    potential = sum(q ** u for u in undecided)
    initial = potential
    if initial >= 1.0:
        logger.warning("Initial potential is not below 1; success is not guaranteed", potential=initial)

    types: Dict[int, int] = {}
    trace = [potential]
    for color in sorted(holders):
        scores = [0.0] * m
        for i in holders[color]:
            if not matched[i]:
                scores[base_colors[i]] += q ** (undecided[i] - 1)
        tau = max(range(m), key=lambda t: (scores[t], -t))
        types[color] = tau

        before = potential
        for i in holders[color]:
            if not matched[i]:
                old = q ** undecided[i]
                if base_colors[i] == tau:
                    matched[i] = True
                    potential -= old
                else:
                    potential += q ** (undecided[i] - 1) - old
            undecided[i] -= 1
        if potential > before + POTENTIAL_TOLERANCE * max(1.0, before):
            logger.error("Potential increased", color=color, before=before, after=potential)
            raise InternalDefectError("conditional expectation greedy increased the potential")
        trace.append(potential)

    assignment = TypeAssignment(m, tuple(sorted(types.items())))
    result = TypeReductionResult(assignment, initial, potential, potentials=trace)

    chosen = []
    for edge, palette, tau in zip(lists.host.edges, lists.lists, base_colors):
        pick = next((c for c in palette if types[c] == tau), None)
        if pick is None:
            result.failed_edge = edge
            result.failed_type = tau
            logger.warning("Type reduction failed", edge=edge, base_color=tau)
            return result
        chosen.append(pick)

    result.coloring = EdgeColoring(lists.host, tuple(chosen))
    logger.info(
        "Type reduction succeeded",
        m=m,
        colors=len(types),
        initial_potential=initial,
        guaranteed=result.guaranteed,
    )
    return result
