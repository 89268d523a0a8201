"""
Tests for complete-graph decompositions
"""

from math import comb

import pytest

from src.core.exceptions import ConstructionFailedError, InvalidInputError
from src.core.hypergraph import Hypergraph, complete_hypergraph
from src.decomp.decompositions import (
    Decomposition,
    PieceKind,
    cycle_decompose,
    cycle_order,
    star_block_partition,
    verify_decomposition,
    walecki,
    walecki_odd,
)


def _assert_cycles(decomposition: Decomposition, length: int) -> None:
    for piece in decomposition.pieces:
        assert piece.edge_count == length
        assert len(cycle_order(piece)) == length


class TestWalecki:
    """Test suite for Walecki's Hamilton decompositions"""

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
    def test_even_host(self, n):
        """Test K_n splits into a perfect matching and (n-2)/2 Hamilton cycles"""
        decomposition = walecki(n)
        report = verify_decomposition(decomposition)
        assert report.is_valid
        assert decomposition.count(PieceKind.PERFECT_MATCHING) == 1
        assert decomposition.count(PieceKind.HAMILTON_CYCLE) == (n - 2) // 2
        assert decomposition.pieces[0].max_degree == 1
        for piece in decomposition.pieces[1:]:
            assert len(cycle_order(piece)) == n

    def test_membership_for_k6(self):
        """Test every vertex of K_6 meets all three pieces"""
        report = verify_decomposition(walecki(6))
        assert report.max_membership == 3

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_odd_host(self, n):
        """Test K_n splits into (n-1)/2 Hamilton cycles"""
        decomposition = walecki_odd(n)
        assert verify_decomposition(decomposition).is_valid
        assert len(decomposition) == (n - 1) // 2
        _assert_cycles(decomposition, n)

    def test_parity_checked(self):
        """Test the wrong parity raises"""
        with pytest.raises(InvalidInputError):
            walecki(5)
        with pytest.raises(InvalidInputError):
            walecki_odd(6)


class TestCycleDecompose:
    """Test suite for the rotational difference method"""

    @pytest.mark.parametrize("n,m", [(7, 3), (9, 4), (9, 9), (11, 5), (13, 6)])
    def test_cycle_decompositions(self, n, m):
        """Test K_n splits into n(n-1)/(2m) cycles of length m"""
        decomposition = cycle_decompose(n, m)
        assert verify_decomposition(decomposition).is_valid
        assert len(decomposition) == comb(n, 2) // m
        _assert_cycles(decomposition, m)

    def test_k9_four_cycles_membership(self):
        """Test every vertex of K_9 lies in exactly four 4-cycles"""
        report = verify_decomposition(cycle_decompose(9, 4))
        assert set(report.membership.values()) == {4}

    def test_no_cyclic_triangle_system_on_nine(self):
        """Test K_9 into triangles is reported as a failed construction"""
        with pytest.raises(ConstructionFailedError):
            cycle_decompose(9, 3)

    def test_short_cycles_rejected(self):
        """Test cycle lengths below 3 raise"""
        with pytest.raises(InvalidInputError):
            cycle_decompose(5, 2)

    def test_divisibility(self):
        """Test m must divide the edge count"""
        with pytest.raises(InvalidInputError):
            cycle_decompose(7, 4)

    def test_even_host_rejected(self):
        """Test even n raises"""
        with pytest.raises(InvalidInputError):
            cycle_decompose(8, 4)


class TestStarBlockPartition:
    """Test suite for the block partition"""

    def test_r4_k3(self):
        """Test three K_3 blocks and three K_{3,3} blocks cover K_9"""
        decomposition = star_block_partition(4, 3)
        report = verify_decomposition(decomposition)
        assert report.is_valid
        assert decomposition.count(PieceKind.CLIQUE_BLOCK) == 3
        assert decomposition.count(PieceKind.BIPARTITE_BLOCK) == 3
        assert sum(p.edge_count for p in decomposition.pieces) == 36
        assert set(report.membership.values()) == {3}

    def test_r2_single_clique(self):
        """Test r = 2 gives a single clique block"""
        decomposition = star_block_partition(2, 5)
        assert decomposition.kinds == (PieceKind.CLIQUE_BLOCK,)
        assert decomposition.pieces[0].edge_count == 10

    def test_k1_only_bipartite(self):
        """Test k = 1 omits the empty clique blocks"""
        decomposition = star_block_partition(4, 1)
        assert decomposition.count(PieceKind.CLIQUE_BLOCK) == 0
        assert verify_decomposition(decomposition).is_valid


class TestVerifier:
    """Test suite for verify_decomposition"""

    def test_detects_overlap_and_gap(self):
        """Test overlapping and missing edges are reported"""
        host = complete_hypergraph(3, 2)
        piece = Hypergraph(2, 3, ((0, 1), (0, 2)))
        report = verify_decomposition(Decomposition(host, (piece, piece), (PieceKind.OTHER,) * 2))
        assert not report.edge_disjoint
        assert not report.covers

    def test_cycle_order_rejects_paths(self):
        """Test a path is not a cycle"""
        with pytest.raises(InvalidInputError):
            cycle_order(Hypergraph(2, 3, ((0, 1), (1, 2))))
