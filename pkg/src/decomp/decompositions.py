"""
Edge decompositions of complete graphs and an independent checker
"""

import enum
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import structlog

from src.core.exceptions import (
    ConstructionFailedError,
    InternalDefectError,
    InvalidInputError,
    UniformityMismatchError,
)
from src.core.hypergraph import Edge, Hypergraph, canonical_edge, complete_hypergraph

logger = structlog.get_logger()


class PieceKind(str, enum.Enum):
    """Shape tag of a decomposition piece"""

    PERFECT_MATCHING = "perfect-matching"
    HAMILTON_CYCLE = "hamilton-cycle"
    CYCLE = "cycle"
    CLIQUE_BLOCK = "clique-block"
    BIPARTITE_BLOCK = "bipartite-block"
    OTHER = "other"


@dataclass(frozen=True)
class Decomposition:
    """Ordered edge-disjoint pieces of a graph host, all on the host's vertex set"""

    host: Hypergraph
    pieces: Tuple[Hypergraph, ...]
    kinds: Tuple[PieceKind, ...]

    def __post_init__(self):
        if self.host.uniformity != 2:
            raise UniformityMismatchError("decompositions are defined for graph hosts")
        if len(self.pieces) != len(self.kinds):
            raise InvalidInputError("every piece needs a kind tag")
        for piece in self.pieces:
            if piece.uniformity != 2 or piece.vertex_count != self.host.vertex_count:
                raise InvalidInputError("pieces must live on the host's vertex set")

    def __len__(self) -> int:
        return len(self.pieces)

    def count(self, kind: PieceKind) -> int:
        return sum(1 for k in self.kinds if k is kind)


@dataclass
class DecompositionReport:
    """Outcome of verify_decomposition"""

    edge_disjoint: bool
    covers: bool
    membership: Dict[int, int] = field(default_factory=dict)

    @property
    def is_valid(self) -> bool:
        return self.edge_disjoint and self.covers

    @property
    def max_membership(self) -> int:
        return max(self.membership.values(), default=0)


def verify_decomposition(decomposition: Decomposition) -> DecompositionReport:
    """
    Recheck a decomposition from scratch

    Args:
        decomposition: Pieces to check against their host

    Returns:
        Report with disjointness, coverage and per-vertex piece counts
    """
    seen: Set[Edge] = set()
    disjoint = True
    membership = {v: 0 for v in range(decomposition.host.vertex_count)}
    for piece in decomposition.pieces:
        for edge in piece.edges:
            if edge in seen:
                disjoint = False
            seen.add(edge)
        for v in piece.covered_vertices:
            membership[v] += 1
    covers = seen == decomposition.host.edge_set
    return DecompositionReport(edge_disjoint=disjoint, covers=covers, membership=membership)


def cycle_order(piece: Hypergraph) -> Tuple[int, ...]:
    """
    Cyclic vertex order of a piece that is a single cycle

    The order starts at the smallest vertex and continues to its smaller neighbour.
    """
    adj: Dict[int, List[int]] = {}
    for u, v in piece.edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if not adj or any(len(nbrs) != 2 for nbrs in adj.values()):
        raise InvalidInputError("piece is not 2-regular on its support")

    start = min(adj)
    order = [start]
    prev, current = start, min(adj[start])
    while current != start:
        order.append(current)
        a, b = adj[current]
        prev, current = current, (b if a == prev else a)
    if len(order) != len(adj):
        raise InvalidInputError("piece is a union of several cycles")
    return tuple(order)


def _cycle_piece(n: int, vertices: Sequence[int]) -> Hypergraph:
    edges = [canonical_edge((vertices[i], vertices[(i + 1) % len(vertices)])) for i in range(len(vertices))]
    return Hypergraph(2, n, tuple(edges))


def _checked(decomposition: Decomposition, name: str) -> Decomposition:
    report = verify_decomposition(decomposition)
    if not report.is_valid:
        logger.error("Constructed decomposition failed the checker", construction=name)
        raise InternalDefectError(f"{name} produced an invalid decomposition")
    logger.info(
        "Decomposition built",
        construction=name,
        n=decomposition.host.vertex_count,
        pieces=len(decomposition),
    )
    return decomposition


def _zigzag(start: int, modulus: int, length: int) -> List[int]:
    """start, start+1, start-1, start+2, start-2, ... reduced mod modulus"""
    seq = [start % modulus]
    step = 1
    while len(seq) < length:
        seq.append((start + step) % modulus)
        if len(seq) < length:
            seq.append((start - step) % modulus)
        step += 1
    return seq


def walecki(n: int) -> Decomposition:
    """
    Split K_n (n even) into one perfect matching and (n-2)/2 Hamilton cycles

    Args:
        n: Even vertex count, at least 2

    Returns:
        Decomposition with the matching first
    """
    if n < 2 or n % 2:
        raise InvalidInputError(f"walecki needs an even n >= 2, got {n}")

    host = complete_hypergraph(n, 2)
    m = (n - 2) // 2
    hub = n - 1
    cycles = []
    for i in range(m):
        cycles.append(_cycle_piece(n, [hub] + _zigzag(i, n - 1, n - 1)))

    used = {e for c in cycles for e in c.edges}
    leftover = [e for e in host.edges if e not in used]
    matching = Hypergraph(2, n, tuple(leftover))
    if matching.edge_count != n // 2 or matching.max_degree != 1:
        raise InternalDefectError("walecki leftover is not a perfect matching")

    pieces = (matching,) + tuple(cycles)
    kinds = (PieceKind.PERFECT_MATCHING,) + (PieceKind.HAMILTON_CYCLE,) * m
    return _checked(Decomposition(host, pieces, kinds), "walecki")


def walecki_odd(n: int) -> Decomposition:
    """Split K_n (n odd, n >= 3) into (n-1)/2 Hamilton cycles"""
    if n < 3 or n % 2 == 0:
        raise InvalidInputError(f"walecki_odd needs an odd n >= 3, got {n}")
    host = complete_hypergraph(n, 2)
    hub = n - 1
    cycles = tuple(
        _cycle_piece(n, [hub] + _zigzag(i, n - 1, n - 1)) for i in range((n - 1) // 2)
    )
    return _checked(
        Decomposition(host, cycles, (PieceKind.HAMILTON_CYCLE,) * len(cycles)),
        "walecki_odd",
    )


@dataclass(frozen=True)
class _Block:
    """One step of the class partition: a rotated base cycle or a coset of one class"""

    base: Tuple[int, ...]
    classes: Tuple[int, ...]
    full_orbit: bool


def _difference_class(a: int, n: int) -> int:
    a %= n
    return min(a, n - a)


def _base_cycles(n: int, m: int, d: int, available: Set[int]) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Base m-cycles through 0 whose first step is +d and whose steps use distinct classes"""
    ordered = sorted(available)
    vertices = [0, d % n]
    used_classes = [d]
    on_cycle = {0, d % n}

    def extend() -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        if len(vertices) == m:
            closing = _difference_class(-vertices[-1], n)
            if closing in available and closing not in used_classes:
                yield tuple(vertices), tuple(used_classes + [closing])
            return
        for cls in ordered:
            if cls in used_classes:
                continue
            for sign in (1, -1):
                nxt = (vertices[-1] + sign * cls) % n
                if nxt in on_cycle:
                    continue
                vertices.append(nxt)
                used_classes.append(cls)
                on_cycle.add(nxt)
                yield from extend()
                on_cycle.discard(nxt)
                used_classes.pop()
                vertices.pop()

    yield from extend()


def _partition_classes(
    n: int, m: int, remaining: frozenset, budget: List[int]
) -> Optional[List[_Block]]:
    if not remaining:
        return []
    budget[0] -= 1
    if budget[0] < 0:
        return None
    d = min(remaining)

    if n // gcd(d, n) == m:
        rest = _partition_classes(n, m, remaining - {d}, budget)
        if rest is not None:
            base = tuple((j * d) % n for j in range(m))
            return [_Block(base, (d,), False)] + rest

    if len(remaining) >= m:
        for base, classes in _base_cycles(n, m, d, set(remaining)):
            rest = _partition_classes(n, m, remaining - set(classes), budget)
            if rest is not None:
                return [_Block(base, classes, True)] + rest
            if budget[0] < 0:
                return None
    return None


def cycle_decompose(n: int, m: int, search_budget: int = 200_000) -> Decomposition:
    """
    Split K_n (n odd) into cycles of length m by the rotational difference method

    Difference classes {1..(n-1)/2} are partitioned into groups realised by base cycles
    in Z_n. A base cycle with m distinct classes is rotated through all of Z_n; a single
    class d with n/gcd(d, n) = m is covered by its gcd(d, n) coset cycles.

    Args:
        n: Odd vertex count
        m: Cycle length with 3 <= m <= n and m dividing n(n-1)/2
        search_budget: Maximum number of partition nodes explored

    Returns:
        Decomposition into n(n-1)/(2m) cycles
    """
    if n % 2 == 0:
        raise InvalidInputError(f"cycle_decompose needs an odd n, got {n}")
    if not 3 <= m <= n:
        raise InvalidInputError(f"cycle length {m} outside [3, {n}]")
    if comb(n, 2) % m:
        raise InvalidInputError(f"{m} does not divide {comb(n, 2)}")

    if m == n:
        return walecki_odd(n)

    classes = frozenset(range(1, (n - 1) // 2 + 1))
    budget = [search_budget]
    blocks = _partition_classes(n, m, classes, budget)
    if blocks is None:
        logger.warning("Difference method found no base cycles", n=n, m=m, exhausted=budget[0] < 0)
        raise ConstructionFailedError(
            f"difference method found no decomposition of K_{n} into {m}-cycles"
        )

    pieces = []
    for block in blocks:
        shifts = n if block.full_orbit else gcd(block.classes[0], n)
        for s in range(shifts):
            pieces.append(_cycle_piece(n, [(v + s) % n for v in block.base]))
        logger.debug("Base cycle", base=block.base, classes=block.classes, full_orbit=block.full_orbit)

    host = complete_hypergraph(n, 2)
    return _checked(
        Decomposition(host, tuple(pieces), (PieceKind.CYCLE,) * len(pieces)),
        "cycle_decompose",
    )


def star_block_partition(r: int, k: int) -> Decomposition:
    """
    Split K_{(r-1)k} into clique blocks on the parts and bipartite blocks between them

    Args:
        r: Star size, at least 2
        k: Part size, at least 1

    Returns:
        Decomposition with the r-1 clique blocks first (omitted when k = 1)
    """
    if r < 2 or k < 1:
        raise InvalidInputError(f"star_block_partition needs r >= 2 and k >= 1, got r={r}, k={k}")

    n = (r - 1) * k
    parts = [range(i * k, (i + 1) * k) for i in range(r - 1)]
    pieces = []
    kinds = []
    if k > 1:
        for part in parts:
            pieces.append(Hypergraph(2, n, tuple(combinations(part, 2))))
            kinds.append(PieceKind.CLIQUE_BLOCK)
    for a, b in combinations(parts, 2):
        pieces.append(Hypergraph(2, n, tuple((u, v) for u in a for v in b)))
        kinds.append(PieceKind.BIPARTITE_BLOCK)

    return _checked(
        Decomposition(complete_hypergraph(n, 2), tuple(pieces), tuple(kinds)),
        "star_block_partition",
    )
