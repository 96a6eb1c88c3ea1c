import math

import numpy as np
import pytest

from edgesbm import (
    EdgeList,
    EdgeSbm,
    MatrixError,
    NodeRangeError,
    PartitionError,
    SizeMismatchError,
    block_pair_counts,
    edge_list_log_probability,
    edge_probability,
    make_partition,
    renormalized,
    uniform_blocks,
    validate_block_matrix,
)

from tests.helpers import random_partition_of


def small_model(rng, n=5, p=2):
    partition = random_partition_of(n, p, rng)
    raw = rng.random((p, p))
    return EdgeSbm(partition, renormalized(partition, raw))


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


def test_make_partition_basic():
    part = make_partition(4, [{0, 1}, {2, 3}])
    assert part.p == 2
    assert part.block_of(2) == 1
    assert part.block_of(0) == 0


def test_make_partition_single_block_of_128():
    part = make_partition(128, [set(range(128))])
    assert part.p == 1
    assert all(part.block_of(u) == 0 for u in (0, 64, 127))


def test_make_partition_rejects_overlap():
    with pytest.raises(PartitionError, match="appears in blocks"):
        make_partition(4, [{0, 1}, {1, 3}])


def test_make_partition_rejects_gaps_and_out_of_range():
    with pytest.raises(PartitionError, match="not covered"):
        make_partition(4, [{0, 1}, {3}])
    with pytest.raises(PartitionError, match="outside"):
        make_partition(4, [{0, 1}, {2, 4}])


def test_make_partition_drops_empty_blocks():
    part = make_partition(3, [set(), {0, 1}, set(), {2}])
    assert part.p == 2
    assert part.blocks[1] == frozenset({2})


def test_block_of_round_trips_blocks():
    rng = np.random.default_rng(42)
    for _ in range(20):
        n = int(rng.integers(1, 12))
        p = int(rng.integers(1, n + 1))
        part = random_partition_of(n, p, rng)
        for i, block in enumerate(part.blocks):
            assert all(part.block_of(u) == i for u in block)
        assert sorted(u for b in part.blocks for u in b) == list(range(n))


def test_refinement_relation():
    coarse = uniform_blocks(8, 2)
    fine = uniform_blocks(8, 4)
    assert fine.refines(coarse)
    assert not coarse.refines(fine)


# ---------------------------------------------------------------------------
# block matrices
# ---------------------------------------------------------------------------


def test_validate_uniform_matrix():
    part = make_partition(128, [range(128)])
    matrix = validate_block_matrix(part, [[1 / 128**2]])
    assert matrix.entries[0, 0] == 1 / 16384


def test_validate_two_block_diagonal():
    part = uniform_blocks(128, 2)
    entries = np.array([[2.0, 0.0], [0.0, 2.0]]) / 128**2
    matrix = validate_block_matrix(part, entries)
    assert matrix.p == 2


def test_validate_reports_actual_mass():
    part = make_partition(12, [range(0, 6), range(6, 9), range(9, 12)])
    entries = np.diag([0.026, 0.003, 0.003])
    with pytest.raises(MatrixError) as err:
        validate_block_matrix(part, entries)
    assert err.value.mass == pytest.approx(0.99, abs=1e-12)


def test_validate_rejects_out_of_range_entries():
    part = make_partition(2, [{0}, {1}])
    with pytest.raises(MatrixError, match=r"\[0, 1\]"):
        validate_block_matrix(part, [[0.5, -0.1], [0.3, 0.3]])


def test_validate_rejects_shape_mismatch():
    part = make_partition(4, [{0, 1}, {2, 3}])
    with pytest.raises(SizeMismatchError):
        validate_block_matrix(part, np.eye(3) / 16)


def test_renormalized_repairs_rounded_input():
    part = make_partition(12, [range(0, 6), range(6, 9), range(9, 12)])
    matrix = renormalized(part, np.diag([0.026, 0.003, 0.003]))
    assert matrix.entries[0, 0] == pytest.approx(0.026 / 0.99)
    mass = float(np.sum(matrix.entries * part.pair_sizes()))
    assert mass == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# edge probability and list probability
# ---------------------------------------------------------------------------


def test_edge_probability_uniform_model():
    part = make_partition(128, [range(128)])
    model = EdgeSbm(part, validate_block_matrix(part, [[1 / 16384]]))
    assert edge_probability(model, 5, 99) == 1 / 16384


def test_edge_probability_two_blocks():
    part = uniform_blocks(128, 2)
    matrix = validate_block_matrix(part, np.diag([2.0, 2.0]) / 16384)
    model = EdgeSbm(part, matrix)
    assert edge_probability(model, 0, 70) == 0.0
    assert edge_probability(model, 0, 63) == 2 / 16384
    with pytest.raises(NodeRangeError):
        edge_probability(model, 0, 128)


def test_model_probabilities_sum_to_one_over_all_pairs():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        model = small_model(rng, n=n, p=int(rng.integers(1, min(n, 3) + 1)))
        n = model.n
        total = math.fsum(
            edge_probability(model, u, v) for u in range(n) for v in range(n)
        )
        assert total == pytest.approx(1.0, abs=1e-9)


def test_log_probability_uniform_two_edges():
    part = make_partition(128, [range(128)])
    model = EdgeSbm(part, validate_block_matrix(part, [[1 / 16384]]))
    edges = EdgeList.create(128, [(0, 1), (100, 100)])
    assert edge_list_log_probability(model, edges) == -28.0


def test_log_probability_zero_edge_is_minus_infinity():
    part = uniform_blocks(128, 2)
    model = EdgeSbm(part, validate_block_matrix(part, np.diag([2.0, 2.0]) / 16384))
    edges = EdgeList.create(128, [(0, 70)])
    assert edge_list_log_probability(model, edges) == -math.inf


def test_log_probability_composes_edge_probabilities():
    rng = np.random.default_rng(17)
    model = small_model(rng)
    edges = EdgeList.create(5, rng.integers(0, 5, size=(5, 2)))
    expected = math.fsum(
        math.log2(edge_probability(model, u, v)) for u, v in edges.edges.tolist()
    )
    assert edge_list_log_probability(model, edges) == pytest.approx(expected, rel=1e-12)


def test_log_probability_invariant_under_relabeling():
    rng = np.random.default_rng(29)
    model = small_model(rng, n=6, p=3)
    edges = EdgeList.create(6, rng.integers(0, 6, size=(20, 2)))
    perm = rng.permutation(6)
    relabeled = EdgeSbm(model.partition.relabeled(perm), model.matrix)
    assert edge_list_log_probability(model, edges) == pytest.approx(
        edge_list_log_probability(relabeled, edges.relabeled(perm)), rel=1e-12
    )


# ---------------------------------------------------------------------------
# block pair counts
# ---------------------------------------------------------------------------


def test_block_pair_counts_empty_prefix():
    part = make_partition(4, [{0, 1}, {2, 3}])
    edges = EdgeList.create(4, [(0, 0), (1, 2)])
    assert block_pair_counts(part, edges, 0).tolist() == [[0, 0], [0, 0]]


def test_block_pair_counts_single_block():
    part = make_partition(5, [range(5)])
    edges = EdgeList.create(5, [(0, 1), (2, 2), (4, 0)])
    assert block_pair_counts(part, edges).tolist() == [[3]]


def test_block_pair_counts_hand_counted():
    part = make_partition(2, [{0}, {1}])
    edges = EdgeList.create(2, [(0, 0), (0, 1), (0, 1)])
    assert block_pair_counts(part, edges, 3).tolist() == [[1, 2], [0, 0]]


def test_block_pair_counts_prefix_growth():
    rng = np.random.default_rng(5)
    part = random_partition_of(6, 3, rng)
    edges = EdgeList.create(6, rng.integers(0, 6, size=(15, 2)))
    for x in range(15):
        before = block_pair_counts(part, edges, x)
        after = block_pair_counts(part, edges, x + 1)
        diff = after - before
        assert diff.sum() == 1
        assert np.count_nonzero(diff) == 1
        assert after.sum() == x + 1


def test_block_pair_counts_rejects_bad_prefix():
    part = make_partition(2, [{0}, {1}])
    edges = EdgeList.create(2, [(0, 0)])
    with pytest.raises(SizeMismatchError):
        block_pair_counts(part, edges, 2)


# ---------------------------------------------------------------------------
# edge lists
# ---------------------------------------------------------------------------


def test_edge_list_rejects_out_of_range():
    with pytest.raises(NodeRangeError):
        EdgeList.create(4, [(0, 4)])
    with pytest.raises(NodeRangeError):
        EdgeList.create(4, [(-1, 0)])


def test_edge_list_preserves_order_and_duplicates():
    edges = EdgeList.create(8, [(3, 7), (3, 7), (0, 0)])
    assert edges.m == 3
    assert edges.edges.tolist() == [[3, 7], [3, 7], [0, 0]]


def test_edge_list_is_immutable():
    edges = EdgeList.create(4, [(0, 1)])
    with pytest.raises(ValueError):
        edges.edges[0, 0] = 2
