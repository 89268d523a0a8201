"""
Tests for proper list edge coloring
"""

from itertools import combinations, product

import pytest

from src.core.exceptions import HostMismatchError, ListTooShortError, ScaleGuardError
from src.core.hypergraph import Hypergraph, ListAssignment, complete_hypergraph, is_proper, verify_list_coloring
from src.listcolor.choosability import edge_choosability, edge_choosability_report
from src.listcolor.cliques import clique_list_edge_color, find_proper_list_edge_coloring
from src.listcolor.galvin import (
    BipartiteGraph,
    galvin_color,
    galvin_color_piece,
    is_bipartite,
    konig_edge_coloring,
    restrict_lists,
)
from src.solver.canonical import _raw_assignments


def complete_bipartite(a: int, b: int) -> Hypergraph:
    return Hypergraph(2, a + b, tuple((u, a + v) for u in range(a) for v in range(b)))


class TestGalvin:
    """Test suite for Galvin's kernel coloring"""

    def test_konig_uses_max_degree_colors(self):
        """Test König coloring of K_{3,4} is proper with four colors"""
        graph = BipartiteGraph.from_hypergraph(complete_bipartite(3, 4))
        phi = konig_edge_coloring(graph)
        assert set(phi.values()) <= set(range(4))
        for (x1, y1), c1 in phi.items():
            for (x2, y2), c2 in phi.items():
                if (x1, y1) != (x2, y2) and (x1 == x2 or y1 == y2):
                    assert c1 != c2

    @pytest.mark.parametrize("seed", range(20))
    def test_random_lists_on_k33(self, make_lists, seed):
        """Test random 3-lists on K_{3,3} always color properly"""
        host = complete_bipartite(3, 3)
        lists = make_lists(host, 3, seed, universe=5)
        coloring = galvin_color_piece(host, lists)
        assert is_proper(coloring)
        assert verify_list_coloring(lists, coloring)

    def test_even_cycle_with_two_lists(self, make_lists):
        """Test 2-lists suffice on an even cycle"""
        cycle = Hypergraph(2, 6, tuple((i, (i + 1) % 6) for i in range(6)))
        for seed in range(10):
            lists = make_lists(cycle, 2, seed, universe=3)
            coloring = galvin_color_piece(cycle, lists)
            assert is_proper(coloring) and verify_list_coloring(lists, coloring)

    def test_short_lists_rejected(self):
        """Test lists below the max degree raise"""
        host = complete_bipartite(2, 3)
        with pytest.raises(ListTooShortError):
            galvin_color(BipartiteGraph.from_hypergraph(host), ListAssignment.uniform(host, (0, 1)))

    def test_host_mismatch(self):
        """Test lists on another graph raise"""
        host = complete_bipartite(2, 2)
        other = complete_bipartite(1, 3)
        with pytest.raises(HostMismatchError):
            galvin_color_piece(host, ListAssignment.uniform(other, (0, 1, 2)))

    def test_is_bipartite(self):
        """Test bipartiteness check"""
        assert is_bipartite(complete_bipartite(2, 3))
        assert not is_bipartite(complete_hypergraph(3, 2))

    def test_restrict_lists(self, k5, make_lists):
        """Test restriction keeps each edge's list"""
        lists = make_lists(k5, 2, seed=1)
        piece = k5.subgraph(((0, 1), (2, 3)))
        restricted = restrict_lists(lists, piece)
        assert restricted.list_for((2, 3)) == lists.list_for((2, 3))
        assert restricted.host == piece


class TestCliqueColoring:
    """Test suite for exhaustive clique list coloring"""

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_random_lists(self, make_lists, m):
        """Test m-lists on K_m color properly"""
        host = complete_hypergraph(m, 2)
        for seed in range(10):
            lists = make_lists(host, m, seed, universe=m + 2)
            coloring = clique_list_edge_color(m, lists)
            assert is_proper(coloring) and verify_list_coloring(lists, coloring)

    def test_short_lists(self, k5):
        """Test lists shorter than the order raise"""
        with pytest.raises(ListTooShortError):
            clique_list_edge_color(5, ListAssignment.uniform(k5, (0, 1, 2, 3)))

    def test_wrong_order(self, k5):
        """Test a host of another order raises"""
        with pytest.raises(HostMismatchError):
            clique_list_edge_color(4, ListAssignment.uniform(k5, range(5)))

    def test_triangle_two_colors_impossible(self):
        """Test K_3 has no proper coloring from one shared 2-list"""
        host = complete_hypergraph(3, 2)
        assert find_proper_list_edge_coloring(ListAssignment.uniform(host, (0, 1))) is None


class TestChoosability:
    """Test suite for exact edge choosability"""

    def test_triangle(self):
        """Test K_3 is 3- but not 2-edge-choosable"""
        triangle = complete_hypergraph(3, 2)
        assert not edge_choosability(triangle, 2)
        assert edge_choosability(triangle, 3)

    def test_four_cycle(self):
        """Test C_4 is 2-edge-choosable"""
        assert edge_choosability(complete_bipartite(2, 2), 2)

    def test_report_has_defeating_lists(self):
        """Test a refutation carries lists no proper coloring respects"""
        report = edge_choosability_report(complete_hypergraph(3, 2), 2)
        assert not report.choosable
        assert report.defeating_lists is not None
        assert find_proper_list_edge_coloring(report.defeating_lists) is None

    def test_default_guard_decides_five_edges(self):
        """Test K_4 - e and the bull are 3-edge-choosable under the default guard"""
        assert edge_choosability(_graph(SMALL_GRAPHS["k4_minus_edge"]), 3)
        assert edge_choosability(_graph(SMALL_GRAPHS["bull"]), 3)

    def test_greedy_lists_skip_enumeration(self):
        """Test lists longer than the line graph degeneracy need no patterns"""
        report = edge_choosability_report(_graph(SMALL_GRAPHS["k4_minus_edge"]), 4)
        assert report.choosable
        assert report.patterns_checked == 0

    def test_subgraph_refutation_extends(self):
        """Test a K_{1,4} inside the cricket defeats it with lists on every edge"""
        graph = _graph(SMALL_GRAPHS["cricket"])
        report = edge_choosability_report(graph, 3)
        assert not report.choosable
        assert report.defeating_lists.host == graph
        assert find_proper_list_edge_coloring(report.defeating_lists) is None

    def test_guard_raises(self):
        """Test a tiny guard stops an enumeration it cannot finish"""
        with pytest.raises(ScaleGuardError):
            edge_choosability(_graph(SMALL_GRAPHS["k4_minus_edge"]), 3, pattern_budget=5)

    @pytest.mark.parametrize(
        "name,k",
        [
            ("two_path", 1),
            ("two_path", 2),
            ("triangle", 2),
            ("triangle", 3),
            ("claw", 2),
            ("claw", 3),
            ("claw", 4),
            ("three_path", 2),
            ("matching", 1),
            ("four_cycle", 2),
            ("four_cycle", 3),
            ("paw", 2),
            ("paw", 3),
            ("four_star", 3),
            ("five_cycle", 2),
            ("bull", 2),
            ("k4_minus_edge", 2),
            ("cricket", 3),
            pytest.param("five_cycle", 3, marks=pytest.mark.slow),
            pytest.param("bull", 3, marks=pytest.mark.slow),
            pytest.param("k4_minus_edge", 3, marks=pytest.mark.slow),
        ],
    )
    def test_agrees_with_exhaustive_oracle(self, name, k):
        """Test the verdict against every list assignment and every coloring"""
        graph = _graph(SMALL_GRAPHS[name])
        assert edge_choosability(graph, k) == _exhaustive_choosable(graph, k)


SMALL_GRAPHS = {
    "two_path": [(0, 1), (1, 2)],
    "triangle": [(0, 1), (0, 2), (1, 2)],
    "claw": [(0, 1), (0, 2), (0, 3)],
    "three_path": [(0, 1), (1, 2), (2, 3)],
    "matching": [(0, 1), (2, 3), (4, 5)],
    "four_cycle": [(0, 1), (1, 2), (2, 3), (0, 3)],
    "paw": [(0, 1), (0, 2), (1, 2), (2, 3)],
    "four_star": [(0, 1), (0, 2), (0, 3), (0, 4)],
    "five_cycle": [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
    "bull": [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)],
    "k4_minus_edge": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
    "cricket": [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4)],
}


def _graph(edges) -> Hypergraph:
    return Hypergraph(2, max(max(e) for e in edges) + 1, tuple(edges))


def _exhaustive_choosable(graph: Hypergraph, k: int) -> bool:
    """Every k-list assignment up to color renaming, every coloring from its lists"""
    edges = graph.edges
    adjacent = [(i, j) for i, j in combinations(range(len(edges)), 2) if set(edges[i]) & set(edges[j])]
    for distinct in range(1, len(edges) + 1):
        for lists in _raw_assignments(len(edges), k, distinct):
            if not any(all(c[i] != c[j] for i, j in adjacent) for c in product(*lists)):
                return False
    return True
