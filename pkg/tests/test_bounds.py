"""
Tests for log-space arithmetic, bound formulas, certificates and the probe
"""

import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest

from src.bounds.certificates import (
    CertificateKind,
    certificate,
    clique_container_certificate,
    matching_parameters,
    matching_ub_certificate,
    supersat_delta_certificate,
    types_certificate,
)
from src.bounds.formulas import (
    ASYMPTOTIC_ONLY,
    CAPPED_AT_ORDINARY,
    bound_grid,
    check_grid,
    clique_turan_density,
    closed_form,
    container_edge_ratio,
    container_log2_constant,
    de_caen,
    de_caen_limit,
    format_table,
    list_bound,
    m_of_h,
    matching_regime,
    non_partite_constant,
)
from src.bounds.logspace import LogReal, log1mexp, log_binomial, log_int, logsumexp
from src.bounds.probe import probe_upper
from src.core.exceptions import ParameterDomainError
from src.core.hypergraph import Hypergraph, clique, matching, star


def _density_by_vertex_subsets(graph: nx.Graph) -> Fraction:
    """max over vertex sets S with at least two induced edges of (e(S) - 1) / (|S| - 2)"""
    best = Fraction(0)
    nodes = list(graph.nodes)
    for size in range(3, len(nodes) + 1):
        for subset in itertools.combinations(nodes, size):
            edges = graph.subgraph(subset).number_of_edges()
            if edges >= 2:
                best = max(best, Fraction(edges - 1, size - 2))
    return best


def _as_pattern(graph: nx.Graph) -> Hypergraph:
    graph = nx.convert_node_labels_to_integers(graph)
    return Hypergraph(2, graph.number_of_nodes(), tuple(tuple(sorted(e)) for e in graph.edges))


class TestLogSpace:
    """Test suite for log-space helpers"""

    def test_log_int_large(self):
        """Test huge integers keep relative precision"""
        assert log_int(2**5000) == pytest.approx(5000 * math.log(2), rel=1e-12)
        with pytest.raises(ParameterDomainError):
            log_int(0)

    def test_log_binomial(self):
        """Test small and lgamma branches"""
        assert log_binomial(10, 3) == pytest.approx(math.log(120))
        assert log_binomial(5000, 2) == pytest.approx(math.log(5000 * 4999 / 2), rel=1e-9)
        assert log_binomial(3, 5) == -math.inf

    def test_log1mexp(self):
        """Test both branches against direct evaluation"""
        for x in (-1e-8, -0.1, -0.5, -3.0, -40.0):
            assert log1mexp(x) == pytest.approx(math.log(-math.expm1(x)), rel=1e-9)

    def test_logsumexp(self):
        """Test summation of logs"""
        assert logsumexp([math.log(2), math.log(3)]) == pytest.approx(math.log(5))
        assert logsumexp([]) == -math.inf

    def test_logreal_comparisons(self):
        """Test exact and log comparisons"""
        assert LogReal.of(5) <= LogReal.of(7)
        assert LogReal.of(2**3000) < LogReal.from_log2(3000.5)
        assert LogReal.of(12).as_int() == 12
        assert str(LogReal.of(12)) == "12"
        assert str(LogReal.from_log2(1000)).startswith("2^")


class TestClosedForms:
    """Test suite for exact ordinary and list values"""

    def test_matching_values(self):
        """Test R(rK_2, k) = rk + r - k + 1"""
        result = closed_form("matching", 3, 2)
        assert result.is_exact
        assert result.lower.as_int() == 8
        assert closed_form("matching", 2, 2).upper.as_int() == 5

    def test_star2(self):
        """Test 2r - 1 for even r and 2r for odd r"""
        assert closed_form("star2", 4, 2).lower.as_int() == 7
        assert closed_form("star2", 3, 2).lower.as_int() == 6

    def test_star_window(self):
        """Test the window and its closure for even r and k"""
        odd = closed_form("star_k", 3, 3)
        assert (odd.lower.as_int(), odd.upper.as_int()) == (7, 8)
        assert odd.regime == "window"
        assert odd.extras["threshold_w"] is None
        even = closed_form("star_k", 4, 4)
        assert even.is_exact
        assert even.lower.as_int() == 13

    def test_rejects_non_positive(self):
        """Test r = 0 raises"""
        with pytest.raises(ParameterDomainError):
            closed_form("matching", 0, 2)


class TestListBounds:
    """Test suite for list_bound"""

    def test_matching_regimes(self):
        """Test the regime split and the r = 1 value"""
        assert matching_regime(10**6, 2) == "small-k"
        assert matching_regime(2, 100) == "large-k"
        trivial = list_bound("matching", {"r": 1, "k": 5})
        assert trivial.is_exact and trivial.lower.as_int() == 2

    def test_matching_capped(self):
        """Test the upper bound never exceeds the ordinary number"""
        result = list_bound("matching", {"r": 3, "k": 2})
        assert CAPPED_AT_ORDINARY in result.flags
        assert result.upper.as_int() == 8
        assert result.extras["construction_types"] == 0
        assert result.extras["construction_lower"] == 6

    def test_chromatic_lower(self):
        """Test exp(sqrt(k log r / (4l))) and the triangle companion"""
        result = list_bound("chromatic_lower", {"r": 2, "l": 2, "k": 100})
        assert result.lower.to_float() == pytest.approx(18.97, rel=1e-3)
        assert result.extras["triangle_lower"] == pytest.approx(12.18, rel=1e-3)
        assert result.upper is None

    def test_clique_hypergraph(self):
        """Test the container upper bound exponent"""
        result = list_bound("clique_hypergraph", {"r": 3, "l": 2, "k": 2})
        assert result.upper.log2 == pytest.approx(1010.04, abs=0.01)
        assert result.lower.as_int() == 3

    def test_hypergraph_upper_flagged(self):
        """Test (1 - pi)^(-k m) is flagged asymptotic-only"""
        result = list_bound("hypergraph_upper", {"pi": "1/2", "m": 2, "k": 3})
        assert ASYMPTOTIC_ONLY in result.flags
        assert result.upper.to_float() == pytest.approx(64.0)

    def test_hypergraph_upper_from_pattern(self):
        """Test m is derived from a pattern"""
        result = list_bound("hypergraph_upper", {"pi": Fraction(1, 2), "pattern": clique(3), "k": 1})
        assert result.params["m"] == "2"

    def test_non_partite(self):
        """Test 1/c_l = 2 l e^(l/2)"""
        assert non_partite_constant(2) == pytest.approx(1 / (4 * math.e))
        result = list_bound("non_partite_lower", {"l": 2, "k": 16})
        assert result.lower.ln == pytest.approx(4 * non_partite_constant(2))

    def test_l_partite(self):
        """Test (k l^l)^(r^(l-1)) and the epsilon flag"""
        result = list_bound("l_partite", {"r": 3, "l": 2, "k": 4})
        assert result.upper.to_float() == pytest.approx(4096.0)
        assert not result.asymptotic_only
        assert list_bound("l_partite", {"r": 3, "l": 2, "k": 4, "epsilon": 0.5}).asymptotic_only

    def test_missing_parameter(self):
        """Test absent parameters raise"""
        with pytest.raises(ParameterDomainError):
            list_bound("chromatic_lower", {"k": 10})


class TestDensities:
    """Test suite for m(H), de Caen and container constants"""

    def test_m_of_h_values(self):
        """Test m of K_3, K_4 and 2K_2"""
        assert m_of_h(clique(3)) == 2
        assert m_of_h(clique(4)) == Fraction(5, 2)
        assert m_of_h(matching(2)) == Fraction(1, 2)

    @pytest.mark.parametrize(
        "graph",
        [
            nx.complete_graph(4),
            nx.complete_graph(5),
            nx.star_graph(4),
            nx.cycle_graph(5),
            nx.complete_bipartite_graph(3, 3),
            nx.path_graph(5),
            nx.gnm_random_graph(6, 8, seed=1),
            nx.gnm_random_graph(7, 10, seed=2),
        ],
    )
    def test_m_of_h_matches_vertex_subsets(self, graph):
        """Test edge-subset enumeration against induced vertex subsets"""
        assert m_of_h(_as_pattern(graph)) == _density_by_vertex_subsets(graph)

    def test_m_of_h_single_edge(self):
        """Test one edge raises"""
        with pytest.raises(ParameterDomainError):
            m_of_h(star(1))

    def test_de_caen(self):
        """Test finite and limiting forms"""
        assert de_caen(4, 4, 2) == Fraction(8, 9)
        assert de_caen_limit(4, 2) == Fraction(2, 3)
        assert de_caen(18, 3, 2) == Fraction(9, 17)
        with pytest.raises(ParameterDomainError):
            de_caen(3, 4, 2)

    def test_turan_and_containers(self):
        """Test Mantel, Turan and container constants"""
        assert clique_turan_density(3).value == Fraction(1, 2)
        assert clique_turan_density(3).source == "Mantel"
        assert clique_turan_density(5).value == Fraction(3, 4)
        assert container_edge_ratio(3, 2) == Fraction(2, 3)
        assert container_log2_constant(3, 2) == 117


class TestGrid:
    """Test suite for the bound grid"""

    def test_small_grid_consistent(self):
        """Test no order or regime violations on a small grid"""
        rows = bound_grid(range(2, 8), range(2, 8))
        assert check_grid(rows) == []
        assert sum(1 for row in rows if row.family == "star2") == 6

    def test_format_table(self):
        """Test the table header and a closed-form row"""
        table = format_table([closed_form("matching", 3, 2)])
        lines = table.splitlines()
        assert lines[0].split("\t")[0] == "family"
        assert "\t8\t8\texact\t-" in lines[1]

    @pytest.mark.slow
    def test_full_grid_consistent(self):
        """Test the whole 2..100 grid"""
        assert check_grid(bound_grid(range(2, 101), range(2, 101))) == []


class TestCertificates:
    """Test suite for union-bound certificates"""

    def test_types_exact(self):
        """Test C(5,2) (1/2)^10 = 10/1024"""
        result = types_certificate(5, 2, 2, 10)
        assert result.passed
        assert result.exact_value == Fraction(10, 1024)
        assert result.log_value == pytest.approx(math.log(10 / 1024))
        assert result.checks["matches_exact"]

    def test_types_failing(self):
        """Test too few colors fail"""
        assert not types_certificate(5, 2, 2, 2).passed

    def test_types_single_type(self):
        """Test one type always passes"""
        assert types_certificate(9, 2, 1, 3).passed

    def test_matching_parameters(self):
        """Test the default host and extra colors in both regimes"""
        assert matching_parameters(10**6, 2) == (2_400_000, 11)
        assert matching_parameters(2, 100) == (1208, 100)

    @pytest.mark.parametrize("r,k", [(10**6, 2), (2, 100)])
    def test_matching_ub_passes(self, r, k):
        """Test the default parameters certify the bound"""
        result = matching_ub_certificate(r, k)
        assert result.passed
        assert result.log_value < 0

    def test_matching_ub_degenerate(self):
        """Test a ratio of one or more fails"""
        result = matching_ub_certificate(5, 2, n=4, t=0)
        assert not result.passed
        assert not result.checks["ratio_below_one"]

    def test_supersaturation(self):
        """Test the K_3 constants"""
        result = supersat_delta_certificate(3, 2)
        assert result.passed
        assert result.exact_value == 9792
        assert result.checks["de_caen_below_x"]
        assert result.notes["x"] == "7/12"

    def test_clique_container(self):
        """Test the default host satisfies the container condition for K_3"""
        assert clique_container_certificate(3, 2, 2).passed

    def test_dispatch(self):
        """Test certificate() routes by kind"""
        result = certificate(CertificateKind.TYPES.value, {"n": 5, "l": 2, "m": 2, "k": 10})
        assert result.kind == "types" and result.passed

    def test_container_feasibility_needs_constant(self):
        """Test the container constant is mandatory"""
        with pytest.raises(ParameterDomainError, match="missing parameter c"):
            certificate("container_feasibility", {"pi": "1/2", "eps": "1/100", "k": 50, "l": 2, "m": 2})

    def test_graph_uniformity_default(self):
        """Test an omitted l means graphs"""
        params = {"pi": "1/2", "eps": "1/100", "k": 2000, "m": 2, "c": 1000.0}
        implicit = certificate("container_feasibility", params)
        explicit = certificate("container_feasibility", {**params, "l": 2})
        assert implicit.params["l"] == 2
        assert implicit.log_value == explicit.log_value

    def test_container_feasibility(self):
        """Test the condition at the default host"""
        result = certificate(
            "container_feasibility", {"pi": "1/2", "eps": "1/100", "k": 2000, "m": 2, "c": 1000.0}
        )
        assert result.passed


class TestExactAgreement:
    """Test suite for log-space values against exact rationals"""

    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_types_against_fractions(self, m):
        """Test the types value for every n, k up to 20"""
        for n, k in itertools.product(range(3, 21), range(1, 21)):
            exact = math.comb(n, 2) * Fraction(m - 1, m) ** k
            expected = _log_fraction(exact)
            got = types_certificate(n, 2, m, k).log_value
            assert abs(got - expected) <= 1e-9 * max(1.0, abs(expected)), (n, k)

    @pytest.mark.parametrize("r", [2, 3, 7, 12, 20])
    def test_matching_against_fractions(self, r):
        """Test the matching value at its default parameters for every k up to 20"""
        for k in range(2, 21):
            result = matching_ub_certificate(r, k)
            if "degenerate" in result.notes:
                continue
            n, t = result.params["n"], result.params["t"]
            a = (r - 1) * (k + t)
            x = Fraction(2 * a, n * (t + 1))
            expected = a * (1 + math.log(n) - math.log(r - 1)) + (n * n // 4) * _log_fraction(1 - (1 - x) ** k)
            assert abs(result.log_value - expected) <= 1e-9 * max(1.0, abs(expected)), (r, k)

    @pytest.mark.parametrize("r,k", [(2, 2), (3, 2), (5, 3), (4, 6), (500, 2)])
    def test_matching_pass_region_is_monotone(self, r, k):
        """Test that once the matching condition holds it keeps holding as n grows"""
        default_n, t = matching_parameters(r, k)
        step = 2 * max(1, default_n // 200)
        verdicts = [
            matching_ub_certificate(r, k, n, t).passed for n in range(2 * r, 2 * default_n + 1, step)
        ]
        assert verdicts == sorted(verdicts)
        assert verdicts[-1]


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


class TestProbe:
    """Test suite for probe_upper"""

    def test_single_color_always_defeats(self):
        """Test one-color lists on K_5 always force 2K_2"""
        report = probe_upper(matching(2), 1, 0, 5, samples=5, seed=1)
        assert report.failure_rate == 1.0

    def test_small_host_never_defeats(self):
        """Test K_3 never holds 2K_2"""
        report = probe_upper(matching(2), 3, 0, 3, samples=5, seed=1)
        assert report.failure_rate == 0.0
        assert report.unknown == 0

    def test_seeded(self):
        """Test equal seeds give equal reports"""
        first = probe_upper(clique(3), 2, 1, 5, samples=6, seed=4)
        second = probe_upper(clique(3), 2, 1, 5, samples=6, seed=4)
        assert first == second
