"""
Closed-form Ramsey and list Ramsey bounds, evaluated in log space
"""

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import structlog

from src.bounds.logspace import LogReal, logaddexp
from src.core.config import settings
from src.core.exceptions import InternalDefectError, ParameterDomainError, ScaleGuardError
from src.core.hypergraph import Hypergraph
from src.solver.worker import SearchWorker
from src.witness.pipelines import matching_pipeline_parameters

logger = structlog.get_logger()

ASYMPTOTIC_ONLY = "asymptotic-only"
CAPPED_AT_ORDINARY = "capped-at-ordinary"
CLOSED_FORM = "closed-form"
LIST_BOUND = "list-bound"


class ClosedFormFamily(str, enum.Enum):
    MATCHING = "matching"
    STAR2 = "star2"
    STAR_K = "star_k"


class ListBoundFamily(str, enum.Enum):
    MATCHING = "matching"
    CLIQUE_HYPERGRAPH = "clique_hypergraph"
    HYPERGRAPH_UPPER = "hypergraph_upper"
    CHROMATIC_LOWER = "chromatic_lower"
    NON_PARTITE_LOWER = "non_partite_lower"
    L_PARTITE = "l_partite"


@dataclass
class BoundResult:
    """Lower and upper bound for one family at one parameter point"""

    family: str
    params: Dict[str, Any]
    lower: Optional[LogReal]
    upper: Optional[LogReal]
    regime: str
    flags: Tuple[str, ...] = ()
    ordinary: Optional[int] = None
    extras: Dict[str, Any] = field(default_factory=dict)
    source: str = LIST_BOUND

    def __post_init__(self):
        if (
            self.lower is not None
            and self.upper is not None
            and self.lower.is_finite
            and self.upper.is_finite
            and not self.lower <= self.upper
        ):
            logger.error("Bound pair out of order", family=self.family, params=self.params)
            raise InternalDefectError(f"{self.family} lower bound exceeds its upper bound at {self.params}")

    @property
    def asymptotic_only(self) -> bool:
        return ASYMPTOTIC_ONLY in self.flags

    @property
    def is_exact(self) -> bool:
        return self.lower is not None and self.lower == self.upper


def _require_positive(**values: int) -> None:
    for name, value in values.items():
        if not isinstance(value, int) or value < 1:
            raise ParameterDomainError(f"{name} must be a positive integer, got {value!r}")


# Ordinary Ramsey numbers

def matching_ramsey_number(r: int, k: int) -> int:
    """R(rK_2, k) = rk + r - k + 1"""
    _require_positive(r=r, k=k)
    return r * k + r - k + 1


def burr_roberts_window(r: int, k: int) -> Tuple[int, int]:
    """(r-1)k + 1 <= R(K_{1,r}, k) <= (r-1)k + 2"""
    _require_positive(r=r, k=k)
    return (r - 1) * k + 1, (r - 1) * k + 2


def star_ramsey_number(r: int, k: int) -> int:
    """The lower end of the window is attained exactly when r and k are both even"""
    lo, hi = burr_roberts_window(r, k)
    return lo if r % 2 == 0 and k % 2 == 0 else hi


def closed_form(family: str, r: int, k: int) -> BoundResult:
    """
    Exact values and windows known in closed form

    Args:
        family: matching (ordinary R(rK_2, k)), star2 (R_l(K_{1,r}, 2)) or star_k
            (the window for R_l(K_{1,r}, k))
        r: Pattern size
        k: Number of colors; ignored for star2

    Returns:
        BoundResult; exact values have lower == upper
    """
    family = ClosedFormFamily(family)
    _require_positive(r=r, k=k)

    if family is ClosedFormFamily.MATCHING:
        value = matching_ramsey_number(r, k)
        exact = LogReal.of(value)
        return BoundResult(
            family.value, {"r": r, "k": k}, exact, exact, "exact", ordinary=value, source=CLOSED_FORM
        )

    if family is ClosedFormFamily.STAR2:
        value = 2 * r - 1 if r % 2 == 0 else 2 * r
        exact = LogReal.of(value)
        return BoundResult(
            family.value, {"r": r, "k": 2}, exact, exact, "exact", ordinary=value, source=CLOSED_FORM
        )

    lo, hi = burr_roberts_window(r, k)
    ordinary = star_ramsey_number(r, k)
    if r % 2 == 0 and k % 2 == 0:
        lo = hi = ordinary
    elif k <= 2 or r == 1:
        # two colors are settled completely; one color or one leaf is the ordinary number
        lo = hi = ordinary
    regime = "exact" if lo == hi else "window"
    extras = {} if lo == hi else {"threshold_w": None}
    return BoundResult(
        family.value,
        {"r": r, "k": k},
        LogReal.of(lo),
        LogReal.of(hi),
        regime,
        ordinary=ordinary,
        extras=extras,
        source=CLOSED_FORM,
    )


# List Ramsey bounds

def matching_regime(r: int, k: int) -> str:
    """small-k when 2(k+1) <= log r, large-k otherwise; r = 1 is trivial"""
    _require_positive(r=r, k=k)
    if r == 1:
        return "trivial"
    return "small-k" if 2 * (k + 1) <= math.log(r) else "large-k"


def _matching_bound(r: int, k: int) -> BoundResult:
    params = {"r": r, "k": k}
    ordinary = matching_ramsey_number(r, k)
    regime = matching_regime(r, k)
    if regime == "trivial":
        two = LogReal.of(2)
        return BoundResult(ListBoundFamily.MATCHING.value, params, two, two, regime, ordinary=ordinary)

    log_rk = math.log(r * k)
    if regime == "small-k":
        lower = LogReal.of(2 * r)
        upper = LogReal.from_log(logaddexp(math.log(2 * r), math.log(42) + k / (k + 1) * math.log(r)))
    else:
        lower = LogReal.from_log(log_rk - math.log(4) - math.log(log_rk))
        upper = LogReal.from_log(math.log(34) + log_rk - math.log(log_rk))

    flags: Tuple[str, ...] = ()
    cap = LogReal.of(ordinary)
    if cap < upper:
        upper = cap
        flags = (CAPPED_AT_ORDINARY,)

    t, n = matching_pipeline_parameters(r, k)
    extras = {
        "trivial_lower": 2 * r,
        "lemma_lower": max(2.0 * r, (r - 1) * k / (2 * log_rk)),
        "construction_types": t,
        "construction_lower": n + 1,
    }
    return BoundResult(
        ListBoundFamily.MATCHING.value, params, lower, upper, regime, flags, ordinary=ordinary, extras=extras
    )


def _chromatic_log_lower(r: int, ell: int, k: int) -> float:
    return math.sqrt(k * math.log(r) / (4 * ell))


def _clique_hypergraph_bound(r: int, ell: int, k: int) -> BoundResult:
    if ell < 2 or r < ell:
        raise ParameterDomainError(f"clique bound needs r >= l >= 2, got r={r}, l={ell}")
    exponent = 4 * r ** (3 * ell - 1) + 4 * k * r ** (ell - 1) * math.log2(r)
    upper = LogReal.from_log2(exponent)

    lower = LogReal.of(r)
    chi = -(-r // (ell - 1))
    if chi - 1 >= 2:
        chromatic = LogReal.from_log(_chromatic_log_lower(chi - 1, ell, k))
        if lower < chromatic:
            lower = chromatic
    return BoundResult(
        ListBoundFamily.CLIQUE_HYPERGRAPH.value,
        {"r": r, "l": ell, "k": k},
        lower,
        upper,
        "explicit-container",
        extras={"upper_log2": exponent},
    )


def _hypergraph_upper_bound(params: Mapping[str, Any], k: int) -> BoundResult:
    pi = Fraction(_param(params, "pi"))
    if not 0 <= pi < 1:
        raise ParameterDomainError(f"Turan density must lie in [0, 1), got {pi}")
    if "m" in params:
        m = Fraction(params["m"])
    elif "pattern" in params:
        m = m_of_h(params["pattern"])
    else:
        raise ParameterDomainError("hypergraph_upper needs m or a pattern")
    ln = -k * float(m) * math.log1p(-float(pi))
    upper = LogReal.from_log(ln) if ln > 0 else LogReal.of(1)
    return BoundResult(
        ListBoundFamily.HYPERGRAPH_UPPER.value,
        {"pi": str(pi), "m": str(m), "k": k},
        None,
        upper,
        "k-to-infinity",
        (ASYMPTOTIC_ONLY,),
    )


def _chromatic_lower_bound(r: int, ell: int, k: int) -> BoundResult:
    if r < 2 or ell < 2:
        raise ParameterDomainError("chromatic lower bound needs r >= 2 and l >= 2")
    lower = LogReal.from_log(_chromatic_log_lower(r, ell, k))
    exponent = math.floor(math.sqrt(k / (ell * math.log(r))))
    extras: Dict[str, Any] = {"construction_host_log": exponent * math.log(r)}
    if r == 2 and ell == 2:
        extras["triangle_lower"] = math.exp(math.sqrt(k) / 4)
    return BoundResult(
        ListBoundFamily.CHROMATIC_LOWER.value, {"r": r, "l": ell, "k": k}, lower, None, "chromatic", extras=extras
    )


def non_partite_constant(ell: int) -> float:
    """c_l with 1/c_l = 2 l e^(l/2)"""
    return 1.0 / (2 * ell * math.exp(ell / 2))


def _non_partite_bound(ell: int, k: int) -> BoundResult:
    if ell < 2:
        raise ParameterDomainError("uniformity must be at least 2")
    c = non_partite_constant(ell)
    return BoundResult(
        ListBoundFamily.NON_PARTITE_LOWER.value,
        {"l": ell, "k": k},
        LogReal.from_log(c * math.sqrt(k)),
        None,
        "non-partite",
        extras={"c_l": c},
    )


def _l_partite_bound(params: Mapping[str, Any], r: int, ell: int, k: int) -> BoundResult:
    if ell < 2 or k < 2:
        raise ParameterDomainError("l-partite bound needs l >= 2 and k >= 2")
    upper = LogReal.from_log(r ** (ell - 1) * (math.log(k) + ell * math.log(ell)))
    c = 1.0 / (2 * r ** (ell - 1) * ell ** 2 * math.log(ell))
    extras: Dict[str, Any] = {"c": c, "reduced_colors": math.floor(c * k / math.log(k))}
    flags: Tuple[str, ...] = ()
    if params.get("epsilon") is not None:
        eps = float(params["epsilon"])
        if eps <= 0:
            raise ParameterDomainError("epsilon must be positive")
        extras["order_log"] = math.log(k) / eps
        flags = (ASYMPTOTIC_ONLY,)
    return BoundResult(
        ListBoundFamily.L_PARTITE.value, {"r": r, "l": ell, "k": k}, None, upper, "l-partite", flags, extras=extras
    )


def _param(params: Mapping[str, Any], name: str, default: Any = None) -> Any:
    value = params.get(name, default)
    if value is None:
        raise ParameterDomainError(f"missing parameter {name}")
    return value


def list_bound(family: str, params: Mapping[str, Any]) -> BoundResult:
    """
    List Ramsey bounds from the general theorems

    Bounds that carry an o(1) or hidden polylogarithmic factor are evaluated with it
    dropped and flagged asymptotic-only.

    Args:
        family: One of ListBoundFamily
        params: r, k, l (uniformity, default 2) and the family's extra inputs:
            pi and m (or pattern) for hypergraph_upper, optional epsilon for l_partite
    """
    family = ListBoundFamily(family)
    k = _param(params, "k")
    ell = params.get("l", 2)
    _require_positive(k=k, l=ell)

    if family is ListBoundFamily.MATCHING:
        r = _param(params, "r")
        _require_positive(r=r)
        return _matching_bound(r, k)
    if family is ListBoundFamily.CLIQUE_HYPERGRAPH:
        return _clique_hypergraph_bound(_param(params, "r"), ell, k)
    if family is ListBoundFamily.HYPERGRAPH_UPPER:
        return _hypergraph_upper_bound(params, k)
    if family is ListBoundFamily.CHROMATIC_LOWER:
        return _chromatic_lower_bound(_param(params, "r"), ell, k)
    if family is ListBoundFamily.NON_PARTITE_LOWER:
        return _non_partite_bound(ell, k)
    return _l_partite_bound(params, _param(params, "r"), ell, k)


# Density parameters

def m_of_h(pattern: Hypergraph) -> Fraction:
    """
    max over sub-hypergraphs H' with at least two edges of (e(H') - 1) / (v(H') - l)

    v(H') counts the vertices the chosen edges cover.
    """
    e = pattern.edge_count
    if e < 2:
        raise ParameterDomainError("m(H) needs at least two edges")
    if e > settings.M_OF_H_MAX_EDGES:
        raise ScaleGuardError(f"{e} edges exceed the brute-force limit of {settings.M_OF_H_MAX_EDGES}")

    ell = pattern.uniformity
    best = Fraction(0)
    for size in range(2, e + 1):
        for subset in itertools.combinations(pattern.edges, size):
            covered = len(set().union(*subset))
            best = max(best, Fraction(size - 1, covered - ell))
    return best


def de_caen(n: int, r: int, ell: int) -> Fraction:
    """Upper bound on ex(K_r^(l), n) / C(n, l)"""
    if not (n >= r > ell >= 2):
        raise ParameterDomainError(f"de Caen's bound needs n >= r > l >= 2, got n={n}, r={r}, l={ell}")
    return 1 - Fraction(n - r + 1, n - ell + 1) / math.comb(r - 1, ell - 1)


def de_caen_limit(r: int, ell: int) -> Fraction:
    if not r > ell >= 2:
        raise ParameterDomainError(f"de Caen's bound needs r > l >= 2, got r={r}, l={ell}")
    return 1 - Fraction(1, math.comb(r - 1, ell - 1))


@dataclass(frozen=True)
class TuranDensity:
    pattern: str
    value: Fraction
    source: str


def clique_turan_density(r: int) -> TuranDensity:
    """pi(K_r) = (r-2)/(r-1) for graphs"""
    if r < 2:
        raise ParameterDomainError("cliques need at least two vertices")
    source = "Mantel" if r == 3 else "Turan"
    return TuranDensity(f"K{r}", Fraction(r - 2, r - 1), source)


KNOWN_TURAN_DENSITIES: Dict[str, TuranDensity] = {
    **{f"K{r}": clique_turan_density(r) for r in range(2, 11)},
    "bipartite": TuranDensity("bipartite", Fraction(0), "Kovari-Sos-Turan"),
}


def container_edge_ratio(r: int, ell: int) -> Fraction:
    """Containers for K_r^(l) hold at most 1 - (2/3)/C(r-1, l-1) of all edges"""
    if not r > ell >= 2:
        raise ParameterDomainError("container constants need r > l >= 2")
    return 1 - Fraction(2, 3) / math.comb(r - 1, ell - 1)


def container_log2_constant(r: int, ell: int) -> int:
    """log2 of the constant in the bound on log(number of containers)"""
    if not r > ell >= 2:
        raise ParameterDomainError("container constants need r > l >= 2")
    return 13 * math.comb(r, ell) ** 2


# Grid sweep

def _grid_point(point: Tuple[int, int]) -> List[BoundResult]:
    r, k = point
    rows = [
        closed_form("matching", r, k),
        list_bound("matching", {"r": r, "k": k}),
        closed_form("star_k", r, k),
    ]
    if k == 2:
        rows.append(closed_form("star2", r, k))
    return rows


def bound_grid(r_values: Iterable[int], k_values: Iterable[int], jobs: Optional[int] = None) -> List[BoundResult]:
    """Matching and star bounds over a grid, in (r, k) order"""
    points = [(r, k) for r in r_values for k in k_values]
    rows = SearchWorker(jobs).map(_grid_point, points)
    flat = [row for chunk in rows for row in chunk]
    logger.info("Bound grid evaluated", points=len(points), rows=len(flat))
    return flat


def check_grid(rows: Sequence[BoundResult]) -> List[str]:
    """Order, list-above-ordinary and regime violations, as messages"""
    problems = []
    for row in rows:
        if row.lower is not None and row.upper is not None and not row.lower <= row.upper:
            problems.append(f"{row.source} {row.family} {row.params}: lower exceeds upper")
        if row.source != LIST_BOUND or row.family != ListBoundFamily.MATCHING.value:
            continue
        if row.upper is not None and not row.upper <= LogReal.of(row.ordinary):
            problems.append(f"list matching {row.params}: upper exceeds R(rK_2, k)")
        expected = matching_regime(row.params["r"], row.params["k"])
        if row.regime != expected:
            problems.append(f"list matching {row.params}: regime {row.regime}, expected {expected}")
    return problems


def _cell(value: Optional[LogReal]) -> str:
    return "-" if value is None else str(value)


def format_table(rows: Sequence[BoundResult], delimiter: str = "\t") -> str:
    lines = [delimiter.join(("family", "params", "lower", "upper", "regime", "flags"))]
    for row in rows:
        params = ",".join(f"{key}={value}" for key, value in sorted(row.params.items()))
        lines.append(
            delimiter.join(
                (row.family, params, _cell(row.lower), _cell(row.upper), row.regime, ",".join(row.flags) or "-")
            )
        )
    return "\n".join(lines)
