"""
Reading and writing list files, pattern names and certificate JSON
"""

import json
import math
import os
import re
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import structlog
from pydantic import ValidationError

from src.bounds.logspace import LogReal
from src.cli.schemas import Certificate
from src.core.exceptions import InvalidInputError, MalformedInputError
from src.core.hypergraph import Hypergraph, ListAssignment, canonical_edge, clique, matching, star

logger = structlog.get_logger()

INT64_MAX = 2**63 - 1
# reals whose magnitude passes this are written as {"log2": ...}
LOG2_THRESHOLD = 1000.0

_PATTERN_NAME = re.compile(r"^(?P<family>[KSM])(?P<r>\d+)(?:\^\{?(?P<ell>\d+)\}?)?$")


def read_text(path: Path) -> str:
    """UTF-8 contents of an input file; decoding errors carry the byte offset"""
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInputError(f"not UTF-8 text ({exc.reason})", f"{path}:byte {exc.start}")
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}")


def parse_pattern(text: str) -> Hypergraph:
    """
    Pattern from a family name or an edge-list file

    K{r} is the clique, K{r}^{l} (or K{r}^l) the complete l-graph, S{r} the star K_{1,r},
    M{r} the matching rK_2. Anything else is read as a file with one edge per line.
    """
    match = _PATTERN_NAME.match(text.strip())
    if match:
        r = int(match.group("r"))
        ell = match.group("ell")
        family = match.group("family")
        if family == "K":
            uniformity = int(ell) if ell else 2
            if r < uniformity or uniformity < 1:
                raise InvalidInputError(f"K{r}^{uniformity} has no edges")
            return clique(r, uniformity)
        if ell:
            raise InvalidInputError(f"{family}-patterns are graphs; drop the ^{ell}")
        return star(r) if family == "S" else matching(r)
    path = Path(text)
    if not path.is_file():
        raise InvalidInputError(f"unknown pattern {text!r}: not a family name or an edge-list file")
    return read_edge_list(path)


def read_edge_list(path: Path) -> Hypergraph:
    """One edge per line as whitespace-separated vertices; '#' starts a comment"""
    edges: List[Tuple[int, ...]] = []
    for lineno, raw in enumerate(read_text(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            edges.append(canonical_edge(int(tok) for tok in line.split()))
        except ValueError:
            raise MalformedInputError(f"bad vertex in {line!r}", f"{path}:{lineno}")
    if not edges:
        raise MalformedInputError("no edges", str(path))
    uniformity = len(edges[0])
    vertex_count = max(max(e) for e in edges) + 1
    _check_uniform(edges, uniformity, path)
    return Hypergraph(uniformity, vertex_count, tuple(edges))


def _check_uniform(edges: List[Tuple[int, ...]], uniformity: int, source: Any) -> None:
    for e in edges:
        if len(e) != uniformity:
            raise MalformedInputError(f"edge {e} has {len(e)} vertices, expected {uniformity}", str(source))


def parse_list_text(text: str, source: str = "<lists>", vertex_count: Optional[int] = None) -> ListAssignment:
    """
    Parse "v1 v2 ... vl : c1,c2,...,ck" lines into a list assignment

    Args:
        text: File contents
        source: Name used in error locations
        vertex_count: Host size; defaults to one more than the largest vertex

    Raises:
        MalformedInputError: With "source:line" as location
    """
    rows: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        location = f"{source}:{lineno}"
        if line.count(":") != 1:
            raise MalformedInputError("expected 'vertices : colors'", location)
        left, right = line.split(":")
        try:
            edge = canonical_edge(int(tok) for tok in left.split())
            colors = tuple(int(tok) for tok in right.replace(",", " ").split())
        except ValueError:
            raise MalformedInputError(f"non-integer token in {line!r}", location)
        if not edge or not colors:
            raise MalformedInputError("empty edge or list", location)
        if len(set(edge)) != len(edge):
            raise MalformedInputError(f"repeated vertex in edge {edge}", location)
        if len(set(colors)) != len(colors):
            raise MalformedInputError(f"repeated color in list {colors}", location)
        if edge in rows:
            raise MalformedInputError(f"edge {edge} listed twice", location)
        if rows:
            first_edge, first_list = next(iter(rows.items()))
            if len(edge) != len(first_edge):
                raise MalformedInputError(f"edge {edge} has {len(edge)} vertices, expected {len(first_edge)}", location)
            if len(colors) != len(first_list):
                raise MalformedInputError(f"list has {len(colors)} colors, expected {len(first_list)}", location)
        rows[edge] = colors

    if not rows:
        raise MalformedInputError("no edges", source)
    uniformity = len(next(iter(rows)))
    k = len(next(iter(rows.values())))
    n = max(max(e) for e in rows) + 1
    if vertex_count is not None:
        if vertex_count < n:
            raise MalformedInputError(f"vertex {n - 1} exceeds the host size {vertex_count}", source)
        n = vertex_count
    host = Hypergraph(uniformity, n, tuple(rows))
    return ListAssignment.from_mapping(host, rows, k)


def read_list_file(path: Path, vertex_count: Optional[int] = None) -> ListAssignment:
    return parse_list_text(read_text(path), str(path), vertex_count)


def format_list_text(lists: ListAssignment) -> str:
    lines = [
        f"{' '.join(map(str, edge))} : {','.join(map(str, pal))}"
        for edge, pal in zip(lists.host.edges, lists.lists)
    ]
    return "\n".join(lines) + "\n"


def random_list_assignment(host: Hypergraph, k: int, universe: int, seed: int) -> ListAssignment:
    """Seeded uniformly random k-subsets of range(universe) on every edge"""
    if universe < k:
        raise InvalidInputError(f"universe of {universe} colors cannot hold {k}-lists")
    rng = np.random.default_rng(seed)
    drawn = tuple(tuple(int(c) for c in rng.choice(universe, size=k, replace=False)) for _ in host.edges)
    return ListAssignment(host, k, drawn)


def to_json_value(value: Any) -> Any:
    """Integers past 64 bits become strings, huge reals become {"log2": ...}"""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > INT64_MAX else value
    if isinstance(value, float):
        if not math.isfinite(value):
            return str(value)
        if abs(value) > 2.0**LOG2_THRESHOLD:
            return {"log2": math.log2(abs(value))}
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, LogReal):
        exact = value.as_int()
        if exact is not None:
            return to_json_value(exact)
        if value.exact is not None:
            return str(value.exact)
        if value.log2 > LOG2_THRESHOLD or not value.is_finite:
            return {"log2": value.log2 if value.is_finite else str(value.log2)}
        return value.to_float()
    if isinstance(value, dict):
        return {str(key): to_json_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(item) for item in value]
    if hasattr(value, "value") and isinstance(value.value, str):
        return value.value
    raise InvalidInputError(f"cannot serialize {type(value).__name__}")


def dumps(data: Any) -> str:
    return json.dumps(to_json_value(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_text_atomic(path: Path, text: str) -> None:
    """Write through a temporary file in the target directory, then rename over the target"""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug("File written", path=str(path), size=len(text))


def write_certificate(path: Path, certificate: Certificate) -> None:
    write_text_atomic(path, dumps(certificate.model_dump(mode="python")))


def parse_certificate(text: str, source: str = "<certificate>") -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}")
    try:
        return Certificate.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise MalformedInputError(first["msg"], f"{source}:{where}")


def read_certificate(path: Path) -> Certificate:
    return parse_certificate(read_text(path), str(path))
