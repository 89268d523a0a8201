"""
Pydantic records for certificate files
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.core.hypergraph import EdgeColoring, Hypergraph, ListAssignment
from src.decomp.decompositions import Decomposition, PieceKind

CertificateKindName = Literal["lower-witness", "upper-witness", "lb-proof", "bound-table", "union-bound"]


class HypergraphRecord(BaseModel):
    """Serialized hypergraph"""

    model_config = ConfigDict(frozen=True)

    uniformity: int = Field(ge=1)
    n: int = Field(ge=0)
    edges: List[List[int]]

    @classmethod
    def from_hypergraph(cls, graph: Hypergraph) -> "HypergraphRecord":
        return cls(
            uniformity=graph.uniformity,
            n=graph.vertex_count,
            edges=[list(e) for e in graph.edges],
        )

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.uniformity, self.n, tuple(tuple(e) for e in self.edges))


class ListAssignmentRecord(BaseModel):
    """Serialized list assignment; lists align with host.edges"""

    model_config = ConfigDict(frozen=True)

    host: HypergraphRecord
    k: int = Field(ge=1)
    lists: List[List[int]]

    @classmethod
    def from_lists(cls, lists: ListAssignment) -> "ListAssignmentRecord":
        return cls(
            host=HypergraphRecord.from_hypergraph(lists.host),
            k=lists.k,
            lists=[list(pal) for pal in lists.lists],
        )

    def to_lists(self) -> ListAssignment:
        return ListAssignment(self.host.to_hypergraph(), self.k, tuple(tuple(pal) for pal in self.lists))


class EdgeColoringRecord(BaseModel):
    """Serialized coloring; colors align with host.edges"""

    model_config = ConfigDict(frozen=True)

    host: HypergraphRecord
    colors: List[int]

    @classmethod
    def from_coloring(cls, coloring: EdgeColoring) -> "EdgeColoringRecord":
        return cls(host=HypergraphRecord.from_hypergraph(coloring.host), colors=list(coloring.colors))

    def to_coloring(self) -> EdgeColoring:
        return EdgeColoring(self.host.to_hypergraph(), tuple(self.colors))


class DecompositionRecord(BaseModel):
    """Serialized decomposition: every piece as its edge list"""

    model_config = ConfigDict(frozen=True)

    host: HypergraphRecord
    pieces: List[List[List[int]]]
    kinds: List[str]

    @classmethod
    def from_decomposition(cls, decomposition: Decomposition) -> "DecompositionRecord":
        return cls(
            host=HypergraphRecord.from_hypergraph(decomposition.host),
            pieces=[[list(e) for e in piece.edges] for piece in decomposition.pieces],
            kinds=[kind.value for kind in decomposition.kinds],
        )

    def to_decomposition(self) -> Decomposition:
        host = self.host.to_hypergraph()
        pieces = tuple(host.subgraph(tuple(e) for e in piece) for piece in self.pieces)
        return Decomposition(host, pieces, tuple(PieceKind(kind) for kind in self.kinds))


class CheckResult(BaseModel):
    """One named verifier check"""

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: Optional[str] = None


class Certificate(BaseModel):
    """Versioned, self-describing result file"""

    model_config = ConfigDict(frozen=True)

    version: str
    kind: CertificateKindName
    payload: Dict[str, Any]
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(check.passed for check in self.checks)
