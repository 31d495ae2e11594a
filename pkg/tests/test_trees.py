import pytest

from stonelab import (
    FiniteForest,
    ValidationError,
    initial_chain_algebra,
    paths,
    sigma_system,
)
from stonelab.families import is_t0_separating, order_profile
from stonelab.oracles import paths_bruteforce, rooted_tree_shapes


class TestForest:
    def test_cycle_rejected(self):
        with pytest.raises(ValidationError):
            FiniteForest([1, 0])

    def test_self_parent_rejected(self):
        with pytest.raises(ValidationError):
            FiniteForest([0])

    def test_out_of_range(self):
        with pytest.raises(ValidationError):
            FiniteForest([None, 7])

    def test_chain_heights(self):
        for n in range(1, 6):
            assert FiniteForest.chain(n).height() == n

    def test_empty(self):
        f = FiniteForest([])
        assert f.size == 0 and f.height() == 0

    def test_ancestors_are_chains(self):
        f = FiniteForest([None, 0, 0, 1, 1, 2, 2])
        assert f.ancestors[3] == 0b0011
        assert f.ancestors[6] == 0b0101
        assert f.depth(6) == 3


class TestPaths:
    def test_root_with_two_children(self):
        assert paths(FiniteForest([None, 0, 0])).size == 4

    def test_complete_binary_seven(self):
        assert paths(FiniteForest([None, 0, 0, 1, 1, 2, 2])).size == 8

    def test_empty_tree(self):
        space = paths(FiniteForest([]))
        assert space.size == 1 and space.paths == (0,)

    def test_count_is_nodes_plus_one(self):
        for parents in rooted_tree_shapes(5):
            assert paths(FiniteForest(parents)).size == 6
        # forests too
        assert paths(FiniteForest([None, None, 1])).size == 4

    def test_matches_bruteforce(self):
        cases = [
            [None, 0, 0],
            [None, 0, 1, 1],
            [None, None, 0, 1],
            [None, 0, 0, 2, 2],
        ]
        for parents in cases:
            f = FiniteForest(parents)
            assert set(paths(f).paths) == paths_bruteforce(f)


class TestSigmaSystem:
    def test_binary_seven_max_order(self):
        sys_ = sigma_system(FiniteForest([None, 0, 0, 1, 1, 2, 2]))
        assert order_profile(sys_.family).max_order == 3

    def test_chain_tree(self):
        for n in range(1, 7):
            sys_ = sigma_system(FiniteForest.chain(n))
            assert order_profile(sys_.family).max_order == n

    def test_empty_tree(self):
        sys_ = sigma_system(FiniteForest([]))
        assert sys_.points.size == 1
        assert sys_.family.size == 0

    def test_order_equals_path_length(self):
        for parents in rooted_tree_shapes(5):
            f = FiniteForest(parents)
            space = paths(f)
            prof = order_profile(sigma_system(f).family)
            for idx, mask in enumerate(space.paths):
                assert prof.per_point[idx] == bin(mask).count("1")

    def test_t0_separating(self):
        for parents in rooted_tree_shapes(4):
            assert is_t0_separating(sigma_system(FiniteForest(parents)).family).separating


class TestInitialChainAlgebra:
    def test_chain_three_full(self):
        res = initial_chain_algebra(FiniteForest.chain(3))
        assert res.generates_whole
        assert res.partition.blocks == (1, 2, 4)
        assert [g.bits for g in res.generators] == [0b000, 0b001, 0b011]

    def test_two_root_antichain_trivial(self):
        res = initial_chain_algebra(FiniteForest([None, None]))
        assert not res.generates_whole
        assert res.partition.block_count == 1

    def test_single_node_trivial(self):
        res = initial_chain_algebra(FiniteForest([None]))
        assert res.partition.block_count == 1

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            initial_chain_algebra(FiniteForest([]))

    def test_branching_tree_not_full(self):
        # siblings share the ancestor set, so they are never separated
        res = initial_chain_algebra(FiniteForest([None, 0, 0]))
        assert not res.generates_whole


def test_tree_shape_counts():
    assert [len(rooted_tree_shapes(n)) for n in range(1, 7)] == [1, 1, 2, 4, 9, 20]
