"""
Tests for monochromatic copy detection
"""

import random

import pytest

from src.core.exceptions import UniformityMismatchError
from src.core.hypergraph import EdgeColoring, Hypergraph, clique, complete_hypergraph, matching, star
from src.core.monochromatic import (
    PatternShape,
    classify_pattern,
    creates_copy,
    find_monochromatic,
    max_matching_per_color,
    maximum_matching,
)

PATTERNS = [star(2), star(3), matching(2), matching(3), clique(3), clique(4)]


def _random_trials(count: int, seed: int):
    gen = random.Random(seed)
    for _ in range(count):
        n = gen.randint(4, 8)
        host = complete_hypergraph(n, 2)
        colors = gen.randint(2, 3)
        yield EdgeColoring(host, tuple(gen.randrange(colors) for _ in host.edges))


class TestClassifyPattern:
    """Test suite for classify_pattern"""

    def test_families(self):
        """Test the three recognised families"""
        assert classify_pattern(star(4)).shape is PatternShape.STAR
        assert classify_pattern(matching(3)).shape is PatternShape.MATCHING
        assert classify_pattern(clique(4)).shape is PatternShape.CLIQUE
        assert classify_pattern(clique(4, 3)).shape is PatternShape.CLIQUE

    def test_generic(self):
        """Test a path on four vertices is generic"""
        path = Hypergraph(2, 4, ((0, 1), (1, 2), (2, 3)))
        assert classify_pattern(path).shape is PatternShape.GENERIC

    def test_single_edge_is_a_clique(self):
        """Test K_2 is classified as a clique"""
        assert classify_pattern(clique(2)).shape is PatternShape.CLIQUE


class TestFindMonochromatic:
    """Test suite for find_monochromatic"""

    def test_triangle_in_monochromatic_k3(self):
        """Test a single-colored K_3 contains a triangle"""
        host = complete_hypergraph(3, 2)
        found = find_monochromatic(clique(3), EdgeColoring(host, (0, 0, 0)))
        assert found is not None
        assert found.is_valid(EdgeColoring(host, (0, 0, 0)))

    def test_pentagon_coloring_is_triangle_free(self, k5):
        """Test the two-pentagon coloring of K_5 has no monochromatic triangle"""
        colors = tuple(0 if (b - a) % 5 in (1, 4) else 1 for a, b in k5.edges)
        assert find_monochromatic(clique(3), EdgeColoring(k5, colors)) is None

    def test_uniformity_mismatch(self, k5):
        """Test differing uniformities raise"""
        with pytest.raises(UniformityMismatchError):
            find_monochromatic(clique(4, 3), EdgeColoring(k5, tuple(0 for _ in k5.edges)))

    def test_fast_paths_agree_with_generic(self):
        """Test specialized detectors match generic search on random colorings"""
        for coloring in _random_trials(100, seed=7):
            for pattern in PATTERNS:
                fast = find_monochromatic(pattern, coloring)
                slow = find_monochromatic(pattern, coloring, method="generic")
                assert (fast is None) == (slow is None)
                if fast is not None:
                    assert fast.is_valid(coloring)

    @pytest.mark.slow
    def test_fast_paths_agree_with_generic_thousand(self):
        """Test detector equivalence on 1000 random colorings"""
        discrepancies = 0
        for coloring in _random_trials(1000, seed=11):
            for pattern in PATTERNS:
                fast = find_monochromatic(pattern, coloring) is None
                slow = find_monochromatic(pattern, coloring, method="generic") is None
                discrepancies += fast != slow
        assert discrepancies == 0


class TestCreatesCopy:
    """Test suite for incremental copy detection"""

    def test_agrees_with_full_search(self):
        """Test creates_copy matches a search on the grown class"""
        gen = random.Random(3)
        for _ in range(200):
            n = gen.randint(4, 7)
            host = complete_hypergraph(n, 2)
            pattern = gen.choice(PATTERNS[:5])
            chosen = [e for e in host.edges if gen.random() < 0.35]
            if not chosen:
                continue
            edge = chosen.pop()
            before = Hypergraph(2, n, tuple(chosen))
            if find_monochromatic(pattern, EdgeColoring(before, tuple(0 for _ in chosen))) is not None:
                continue
            after = Hypergraph(2, n, tuple(chosen) + (edge,))
            expected = find_monochromatic(pattern, EdgeColoring(after, tuple(0 for _ in after.edges))) is not None
            assert creates_copy(pattern, chosen, edge, n) == expected


class TestMatchings:
    """Test suite for the matching oracle"""

    def test_maximum_matching_of_k5(self, k5):
        """Test K_5 has matching number 2"""
        assert len(maximum_matching(k5.edges)) == 2

    def test_matching_is_vertex_disjoint(self, k6):
        """Test the returned matching is a matching"""
        found = maximum_matching(k6.edges)
        covered = [v for e in found for v in e]
        assert len(found) == 3
        assert len(covered) == len(set(covered))

    def test_max_matching_per_color(self, k5):
        """Test per-color matching numbers, absent colors reported as 0"""
        colors = tuple(0 if 0 in e else 1 for e in k5.edges)
        report = max_matching_per_color(EdgeColoring(k5, colors), colors=(0, 1, 2))
        assert report == {0: 1, 1: 2, 2: 0}
