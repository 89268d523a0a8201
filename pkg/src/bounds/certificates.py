"""
Union-bound certificates: numeric conditions whose truth proves a bound
"""

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional, Tuple

import structlog

from src.bounds.formulas import de_caen, matching_regime
from src.bounds.logspace import LOG2, log1mexp, log_binomial, log_fraction, log_int, relative_error
from src.core.exceptions import ParameterDomainError

logger = structlog.get_logger()

# exact recomputation is skipped when a rational power would get larger than this
EXACT_POWER_LIMIT = 4096
RELATIVE_TOLERANCE = 1e-9


class CertificateKind(str, enum.Enum):
    TYPES = "types"
    MATCHING_UB = "matching_ub"
    CONTAINER_FEASIBILITY = "container_feasibility"
    SUPERSAT_DELTA = "supersat_delta"
    CLIQUE_CONTAINER = "clique_container"


@dataclass
class UnionBoundResult:
    """
    A certificate condition evaluated in log space

    log_value is the natural log of the quantity that must stay below 1 (or the log of
    the left side minus the log of the right side); the certificate passes when it is
    negative and every named check holds.
    """

    kind: str
    params: Dict[str, Any]
    log_value: float
    passed: bool
    exact_value: Optional[Fraction] = None
    exact_log_value: Optional[float] = None
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def relative_error(self) -> Optional[float]:
        if self.exact_log_value is None or not math.isfinite(self.exact_log_value):
            return None
        return relative_error(self.log_value, self.exact_log_value)


def _finish(result: UnionBoundResult) -> UnionBoundResult:
    result.checks.setdefault("log_value_negative", result.log_value < 0)
    if result.relative_error is not None:
        result.checks["matches_exact"] = result.relative_error < RELATIVE_TOLERANCE
    result.passed = all(result.checks.values())
    logger.info(
        "Certificate evaluated",
        kind=result.kind,
        log_value=result.log_value,
        passed=result.passed,
    )
    return result


def _int_param(params: Mapping[str, Any], name: str, minimum: int = 1, default: Optional[int] = None) -> int:
    if name not in params:
        if default is not None:
            return default
        raise ParameterDomainError(f"missing parameter {name}")
    value = int(params[name])
    if value < minimum:
        raise ParameterDomainError(f"{name} must be at least {minimum}, got {value}")
    return value


def types_certificate(n: int, ell: int, m: int, k: int) -> UnionBoundResult:
    """
    C(n, l) (1 - 1/m)^k < 1: some type assignment serves every edge of K_n^(l)

    Args:
        n: Host size
        ell: Uniformity
        m: Number of types
        k: List size
    """
    if n < ell or ell < 1:
        raise ParameterDomainError(f"host K_{n} has no {ell}-edges")
    if m < 1 or k < 1:
        raise ParameterDomainError("types and list size must be positive")
    params = {"n": n, "l": ell, "m": m, "k": k}
    edges = math.comb(n, ell)
    if m == 1:
        return _finish(UnionBoundResult(CertificateKind.TYPES.value, params, -math.inf, True, Fraction(0)))

    log_value = log_binomial(n, ell) + k * math.log1p(-1.0 / m)
    exact = None
    exact_log = None
    if k <= EXACT_POWER_LIMIT:
        exact = edges * Fraction(m - 1, m) ** k
        exact_log = log_fraction(exact)
    notes = {"theorem_types": math.floor(k / (ell * math.log(n))) if n > 1 else None}
    return _finish(
        UnionBoundResult(
            CertificateKind.TYPES.value, params, log_value, False, exact, exact_log, notes=notes
        )
    )


def _ceil_scaled_root(scale: int, r: int, k: int) -> int:
    """Exact ceil(scale * r^(k/(k+1)))"""
    target = scale ** (k + 1) * r ** k
    c = max(1, math.ceil(scale * r ** (k / (k + 1))))
    while c > 1 and (c - 1) ** (k + 1) >= target:
        c -= 1
    while c ** (k + 1) < target:
        c += 1
    return c


def _ceil_ratio_over_root(n: int, scale: int, r: int, k: int) -> int:
    """Exact ceil(n / (scale * r^(k/(k+1))))"""
    q = max(1, math.ceil(n / (scale * r ** (k / (k + 1)))))
    while q > 1 and ((q - 1) * scale) ** (k + 1) * r ** k >= n ** (k + 1):
        q -= 1
    while (q * scale) ** (k + 1) * r ** k < n ** (k + 1):
        q += 1
    return q


def matching_parameters(r: int, k: int) -> Tuple[int, int]:
    """
    Host size n and extra colors t for the random-list argument

    small-k: n = 2r + 2 ceil(20 r^(k/(k+1))), t = (k-1) ceil(n / (20 r^(k/(k+1)))) - 1.
    large-k: n = 2 ceil(16 rk / log(rk)), t = k.
    """
    if matching_regime(r, k) == "small-k":
        n = 2 * r + 2 * _ceil_scaled_root(20, r, k)
        t = (k - 1) * _ceil_ratio_over_root(n, 20, r, k) - 1
        return n, t
    return 2 * math.ceil(16 * r * k / math.log(r * k)), k


def matching_ub_certificate(
    r: int, k: int, n: Optional[int] = None, t: Optional[int] = None
) -> UnionBoundResult:
    """
    log of (en/(r-1))^((r-1)(k+t)) (1 - (1 - 2(r-1)(k+t)/(n(t+1)))^k)^(n^2/4)

    A negative value means a random assignment of k-lists from k+t colors on K_n is,
    with positive probability, one no coloring escapes, so R_l(rK_2, k) <= n.

    Args:
        r: Matching size, at least 2
        k: List size, at least 2
        n: Even host size; defaults to the regime's choice
        t: Extra colors; defaults to the regime's choice
    """
    if r < 2 or k < 2:
        raise ParameterDomainError("matching certificate needs r >= 2 and k >= 2")
    default_n, default_t = matching_parameters(r, k)
    n = default_n if n is None else n
    t = default_t if t is None else t
    if n % 2 or n < 2 or t < 0:
        raise ParameterDomainError(f"need an even host size and t >= 0, got n={n}, t={t}")

    params = {"r": r, "k": k, "n": n, "t": t}
    a = (r - 1) * (k + t)
    first = a * (1 + log_int(n) - log_int(r - 1))
    x = Fraction(2 * a, n * (t + 1))
    pairs = n * n // 4
    notes = {"regime": matching_regime(r, k)}

    if x >= 1:
        notes["degenerate"] = "average degree ratio is at least 1"
        result = UnionBoundResult(CertificateKind.MATCHING_UB.value, params, first, False, notes=notes)
        result.checks["ratio_below_one"] = False
        return _finish(result)

    second = pairs * log1mexp(k * math.log1p(-float(x)))
    log_value = first + second

    exact_log = None
    if k <= EXACT_POWER_LIMIT // 8:
        q = 1 - (1 - x) ** k
        exact_log = first + pairs * log_fraction(q)
    return _finish(
        UnionBoundResult(
            CertificateKind.MATCHING_UB.value, params, log_value, False, None, exact_log, notes=notes
        )
    )


def container_feasibility_certificate(
    pi: Fraction,
    eps: Fraction,
    k: int,
    ell: int,
    m: Fraction,
    c: float,
    log_n: Optional[float] = None,
) -> UnionBoundResult:
    """
    c k (1 + 2/eps) l^l / (1 - pi - 2 eps)^k < n^(1/m) / log n

    c is the container constant of the pattern and must be supplied. Without a host
    size the condition is tested at n = (1 - pi - 3 eps)^(-k m).
    """
    pi, eps, m = Fraction(pi), Fraction(eps), Fraction(m)
    if eps <= 0 or not 0 <= pi < 1:
        raise ParameterDomainError("need eps > 0 and 0 <= pi < 1")
    if pi + 3 * eps >= 1:
        raise ParameterDomainError(f"pi + 3 eps = {float(pi + 3 * eps)} must stay below 1")
    if c <= 0 or m <= 0:
        raise ParameterDomainError("container constant and m(H) must be positive")

    notes: Dict[str, Any] = {}
    if log_n is None:
        log_n = -k * float(m) * math.log1p(-float(pi + 3 * eps))
        notes["host"] = "(1 - pi - 3 eps)^(-k m)"
    if log_n <= 0:
        raise ParameterDomainError("host size must exceed 1")

    lhs = (
        math.log(c)
        + math.log(k)
        + math.log1p(2 / float(eps))
        + ell * math.log(ell)
        - k * math.log1p(-float(pi + 2 * eps))
    )
    rhs = log_n / float(m) - math.log(log_n)
    params = {"pi": str(pi), "eps": str(eps), "k": k, "l": ell, "m": str(m), "c": c, "log_n": log_n}
    notes.update({"log_lhs": lhs, "log_rhs": rhs})
    return _finish(
        UnionBoundResult(CertificateKind.CONTAINER_FEASIBILITY.value, params, lhs - rhs, False, notes=notes)
    )


def supersat_delta_certificate(r: int, ell: int) -> UnionBoundResult:
    """
    Supersaturation constants for K_r^(l): x = 1 - (5/6)/C(r-1, l-1), eps = (1/6)/C(r-1, l-1),
    m = 6r and 1/delta = C(m, r) / eps

    Checks that de Caen's bound puts ex(K_r^(l), m) below x C(m, l) and that
    1/delta <= 2^(2 C(r, l)^2).
    """
    if not r > ell >= 2:
        raise ParameterDomainError(f"need r > l >= 2, got r={r}, l={ell}")
    base = math.comb(r - 1, ell - 1)
    x = 1 - Fraction(5, 6) / base
    eps = Fraction(1, 6) / base
    m = 6 * r
    inverse_delta = Fraction(math.comb(m, r)) / eps
    cap_bits = 2 * math.comb(r, ell) ** 2

    log_value = log_binomial(m, r) + math.log(6 * base) - cap_bits * LOG2
    checks = {
        "de_caen_below_x": de_caen(m, r, ell) < x,
        "delta_within_stated": inverse_delta <= 2 ** cap_bits,
    }
    params = {"r": r, "l": ell}
    notes = {"x": str(x), "eps": str(eps), "m": m}
    return _finish(
        UnionBoundResult(
            CertificateKind.SUPERSAT_DELTA.value,
            params,
            log_value,
            False,
            inverse_delta,
            log_fraction(inverse_delta) - cap_bits * LOG2,
            checks=checks,
            notes=notes,
        )
    )


def clique_container_certificate(
    r: int, ell: int, k: int, log2_n: Optional[float] = None
) -> UnionBoundResult:
    """
    2^(13 C(r,l)^2) k (1 + 6 C(r-1,l-1)) l^l (3 C(r-1,l-1))^k < n^(1/m(K_r^(l))) / log n

    The host defaults to n = 2^(4 r^(3l-1) + 4 k r^(l-1) log2 r).
    """
    if not r > ell >= 2 or k < 2:
        raise ParameterDomainError("clique container certificate needs r > l >= 2 and k >= 2")
    base = math.comb(r - 1, ell - 1)
    edges = math.comb(r, ell)
    m = Fraction(edges - 1, r - ell)
    if log2_n is None:
        log2_n = 4 * r ** (3 * ell - 1) + 4 * k * r ** (ell - 1) * math.log2(r)
    log_n = log2_n * LOG2

    lhs = 13 * edges ** 2 * LOG2 + math.log(k) + math.log(1 + 6 * base) + ell * math.log(ell) + k * math.log(3 * base)
    rhs = log_n / float(m) - math.log(log_n)
    params = {"r": r, "l": ell, "k": k, "log2_n": log2_n}
    notes = {"m": str(m), "log_lhs": lhs, "log_rhs": rhs}
    return _finish(
        UnionBoundResult(CertificateKind.CLIQUE_CONTAINER.value, params, lhs - rhs, False, notes=notes)
    )


def certificate(kind: str, params: Mapping[str, Any]) -> UnionBoundResult:
    """
    Evaluate one certificate

    Args:
        kind: One of CertificateKind
        params: Keyword parameters of the matching *_certificate function; uniformity
            is passed as "l" and is 2 when omitted (types always needs it)

    Returns:
        UnionBoundResult with log_value and the pass flag
    """
    kind = CertificateKind(kind)
    if kind is CertificateKind.TYPES:
        return types_certificate(
            _int_param(params, "n"), _int_param(params, "l"), _int_param(params, "m"), _int_param(params, "k")
        )
    if kind is CertificateKind.MATCHING_UB:
        n = params.get("n")
        t = params.get("t")
        return matching_ub_certificate(
            _int_param(params, "r"),
            _int_param(params, "k"),
            None if n is None else int(n),
            None if t is None else int(t),
        )
    if kind is CertificateKind.CONTAINER_FEASIBILITY:
        for name in ("pi", "eps", "m", "c"):
            if name not in params:
                raise ParameterDomainError(f"missing parameter {name}")
        log_n = params.get("log_n")
        return container_feasibility_certificate(
            Fraction(params["pi"]),
            Fraction(params["eps"]),
            _int_param(params, "k"),
            _int_param(params, "l", 2, default=2),
            Fraction(params["m"]),
            float(params["c"]),
            None if log_n is None else float(log_n),
        )
    if kind is CertificateKind.SUPERSAT_DELTA:
        return supersat_delta_certificate(_int_param(params, "r"), _int_param(params, "l", 2, default=2))
    log2_n = params.get("log2_n")
    return clique_container_certificate(
        _int_param(params, "r"),
        _int_param(params, "l", 2, default=2),
        _int_param(params, "k", 2),
        None if log2_n is None else float(log2_n),
    )
