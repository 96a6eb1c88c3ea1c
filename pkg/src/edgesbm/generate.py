"""Edge sampling and the planted models used by the experiments.

Randomness policy: every random task owns a Seed, a (value, stream_id) pair
feeding numpy's Philox counter-based generator.  Distinct stream_ids give
statistically independent streams for the same master value, so experiment
tasks (replicate graphs, random partitions, order draws) are seeded as
Seed(master, task_index) and can run in any order or in parallel without
changing their output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EdgeSbmError, SizeMismatchError
from .model import (
    EdgeList,
    EdgeSbm,
    Partition,
    make_partition,
    renormalized,
    validate_block_matrix,
)


@dataclass(frozen=True)
class Seed:
    """Deterministic PRNG handle: (value, stream_id) -> Philox key."""

    value: int
    stream_id: int = 0

    def rng(self) -> np.random.Generator:
        key = np.array([self.value, self.stream_id], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def stream(self, stream_id: int) -> "Seed":
        """Same master value, different stream."""
        return Seed(self.value, stream_id)


def sample_edges(model: EdgeSbm, m: int, seed: Seed) -> EdgeList:
    """Draw ``m`` edges i.i.d. from the model.

    Two-stage draw: pick a block pair (i, j) with weight entries[i,j] *
    |b_i||b_j| via one searchsorted against a cumulative-weight table, then
    endpoints uniformly inside each block.  Block pairs with zero entry are
    never hit.  Deterministic given ``seed``.
    """
    if m < 0:
        raise EdgeSbmError(f"edge count must be non-negative, got {m}")
    part = model.partition
    if m == 0:
        return EdgeList.create(part.n, np.empty((0, 2), dtype=np.int64))

    weights = (model.matrix.entries * part.pair_sizes()).ravel()
    cum = np.cumsum(weights)
    cum /= cum[-1]
    cum[-1] = 1.0

    # Node ids grouped by block, so (block, local index) -> node is one lookup.
    sizes = part.block_sizes
    flat_nodes = np.concatenate([np.fromiter(sorted(b), np.int64) for b in part.blocks])
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))

    rng = seed.rng()
    labels = np.searchsorted(cum, rng.random(m), side="right")
    i = labels // part.p
    j = labels % part.p
    u_local = (rng.random(m) * sizes[i]).astype(np.int64)
    v_local = (rng.random(m) * sizes[j]).astype(np.int64)
    edges = np.column_stack((flat_nodes[starts[i] + u_local], flat_nodes[starts[j] + v_local]))
    return EdgeList.create(part.n, edges)


def uniform_blocks(n: int, k: int) -> Partition:
    """Partition 0..n-1 into k consecutive ranges of equal size n/k."""
    if k < 1 or n % k != 0:
        raise EdgeSbmError(f"block count {k} must divide node count {n}")
    size = n // k
    return make_partition(n, [range(i * size, (i + 1) * size) for i in range(k)])


def diagonal_model(n: int, k: int) -> EdgeSbm:
    """k equal blocks, within-block pair probability k/n^2, zero elsewhere.

    Mass is exactly 1: k blocks contribute k * (k/n^2) * (n/k)^2 each.
    """
    part = uniform_blocks(n, k)
    entries = np.diag(np.full(k, k / (float(n) * n)))
    return EdgeSbm(part, validate_block_matrix(part, entries))


def mixing_model(n: int, i: int) -> EdgeSbm:
    """Two equal communities with tunable separation.

    Mixing index ``i`` in 0..9: within-pair probability (2 - i/10)/n^2,
    cross-pair i/10/n^2.  i=0 is perfectly separated, i=9 nearly uniform.
    """
    if n % 2 != 0:
        raise EdgeSbmError(f"node count {n} must be even")
    if not 0 <= i <= 9:
        raise EdgeSbmError(f"mixing index {i} outside 0..9")
    part = uniform_blocks(n, 2)
    d = (2.0 - i / 10.0) / (float(n) * n)
    o = (i / 10.0) / (float(n) * n)
    entries = np.array([[d, o], [o, d]])
    return EdgeSbm(part, validate_block_matrix(part, entries))


def heterogeneous_model(
    n: int, block_sizes, within_probs, renormalize: bool = False
) -> EdgeSbm:
    """Disconnected communities of given sizes and within-pair probabilities.

    Off-diagonal entries are zero.  With ``renormalize`` the diagonal is
    scaled by 1/mass, repairing inputs whose printed probabilities do not
    sum to exactly 1; without it, a mass off by more than the tolerance
    raises MatrixError.
    """
    block_sizes = [int(s) for s in block_sizes]
    within_probs = [float(q) for q in within_probs]
    if len(block_sizes) != len(within_probs):
        raise SizeMismatchError(
            f"{len(block_sizes)} sizes vs {len(within_probs)} probabilities"
        )
    if sum(block_sizes) != n:
        raise SizeMismatchError(
            f"block sizes sum to {sum(block_sizes)}, expected {n}"
        )
    if any(s <= 0 for s in block_sizes):
        raise EdgeSbmError("zero-size blocks are not allowed here")
    bounds = np.concatenate(([0], np.cumsum(block_sizes)))
    part = make_partition(n, [range(bounds[i], bounds[i + 1]) for i in range(len(block_sizes))])
    entries = np.diag(within_probs)
    if renormalize:
        matrix = renormalized(part, entries)
    else:
        matrix = validate_block_matrix(part, entries)
    return EdgeSbm(part, matrix)
