"""Partition candidate families and the code-length argmin estimator.

Inference here is exhaustive over an explicit family of candidate
partitions: every member is scored with the sequential code length and the
minimizer wins.  The families cover dyadic refinements, boundary cuts,
block offsets, and random partitions/refinements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EdgeSbmError, SizeMismatchError
from .generate import Seed
from .model import EdgeList, Partition, make_partition
from .prequential import averaged_code_length, evaluate


@dataclass(frozen=True)
class PartitionFamily:
    """An ordered list of (parameter value, partition) candidates."""

    label: str
    members: tuple[tuple[int, Partition], ...]

    def __post_init__(self):
        if not self.members:
            raise EdgeSbmError(f"family {self.label!r} has no members")
        n = self.members[0][1].n
        if any(part.n != n for _, part in self.members):
            raise SizeMismatchError("family members must share the node count")
        params = [param for param, _ in self.members]
        if len(set(params)) != len(params):
            raise EdgeSbmError("family parameter values must be distinct")

    @property
    def n(self) -> int:
        return self.members[0][1].n


@dataclass(frozen=True)
class ScoreRow:
    """One family member's score."""

    param: int
    blocks: int
    mean_code_length: float
    mean_prediction_probability: float | None
    per_order: tuple[float, ...] | None


@dataclass(frozen=True)
class SearchResult:
    winner_param: int
    winner: Partition
    rows: tuple[ScoreRow, ...]
    tie: bool


def best_partition(
    edges: EdgeList,
    family: PartitionFamily,
    use_order_averaging: bool = False,
    num_orders: int = 10,
    seed: Seed = Seed(0),
) -> SearchResult:
    """Score every family member and return the code-length argmin.

    With order averaging, all members are scored on the same ``num_orders``
    random edge orders (drawn from ``seed``) so the comparison is paired.
    Ties go to the earliest member in family order and are flagged.
    """
    if edges.n != family.n:
        raise SizeMismatchError(
            f"edge list n={edges.n} vs family n={family.n}"
        )
    rows = []
    for param, part in family.members:
        if use_order_averaging:
            avg = averaged_code_length(edges, part, num_orders, seed)
            rows.append(
                ScoreRow(param, part.p, avg.mean, None, avg.per_order)
            )
        else:
            rep = evaluate(edges, part)
            rows.append(
                ScoreRow(
                    param,
                    part.p,
                    rep.mean_code_length,
                    rep.mean_prediction_probability,
                    None,
                )
            )
    best = min(range(len(rows)), key=lambda i: rows[i].mean_code_length)
    tie = any(
        i != best and rows[i].mean_code_length == rows[best].mean_code_length
        for i in range(len(rows))
    )
    return SearchResult(
        winner_param=rows[best].param,
        winner=family.members[best][1],
        rows=tuple(rows),
        tie=tie,
    )


def dyadic_family(n: int, depth: int) -> PartitionFamily:
    """Partitions with 1, 2, 4, ..., 2^depth consecutive equal blocks.

    Each level splits every block of the previous one in two equal halves,
    so consecutive members form a refinement chain.
    """
    if depth < 0:
        raise EdgeSbmError(f"depth must be >= 0, got {depth}")
    if n % (1 << depth) != 0:
        raise EdgeSbmError(f"2^{depth} must divide node count {n}")
    members = []
    for level in range(depth + 1):
        k = 1 << level
        size = n // k
        part = make_partition(n, [range(i * size, (i + 1) * size) for i in range(k)])
        members.append((k, part))
    return PartitionFamily("dyadic", tuple(members))


def cut_family(n: int, step: int = 8) -> PartitionFamily:
    """Two-block partitions {0..c-1}, {c..n-1} for c = 0, step, ..., n.

    c=0 and c=n degenerate to the single-block partition (the empty side is
    dropped).
    """
    if step < 1:
        raise EdgeSbmError(f"step must be >= 1, got {step}")
    members = []
    for c in range(0, n + 1, step):
        blocks = [range(0, c), range(c, n)]
        members.append((c, make_partition(n, blocks)))
    return PartitionFamily("cut", tuple(members))


def offset_family(n: int, step: int = 4, max_offset: int | None = None) -> PartitionFamily:
    """Two half-size blocks shifted by o: {o..o+n/2-1} and its complement."""
    if n % 2 != 0:
        raise EdgeSbmError(f"node count {n} must be even")
    if step < 1:
        raise EdgeSbmError(f"step must be >= 1, got {step}")
    half = n // 2
    if max_offset is None:
        max_offset = half
    if max_offset + half > n:
        raise EdgeSbmError(
            f"max offset {max_offset} pushes the block past node {n - 1}"
        )
    members = []
    for o in range(0, max_offset + 1, step):
        inside = range(o, o + half)
        outside = list(range(0, o)) + list(range(o + half, n))
        members.append((o, make_partition(n, [inside, outside])))
    return PartitionFamily("offset", tuple(members))


def random_partition(n: int, k: int, seed: Seed) -> Partition:
    """Assign each node uniformly to one of k labels; empty labels drop out.

    The resulting block count may be below k (reported by the partition's
    own ``p``), never above.
    """
    if not 1 <= k <= n:
        raise EdgeSbmError(f"block count {k} outside [1, {n}]")
    labels = seed.rng().integers(0, k, size=n)
    blocks = [np.flatnonzero(labels == lab) for lab in range(k)]
    return make_partition(n, [b for b in blocks if b.size])


def random_refinement(partition: Partition, seed: Seed) -> Partition:
    """Split every block of size >= 2 into two non-empty random halves.

    The split is uniform over the non-trivial bipartitions of the block;
    singleton blocks pass through.  The output always refines the input.
    """
    rng = seed.rng()
    blocks = []
    for block in partition.blocks:
        nodes = sorted(block)
        if len(nodes) < 2:
            blocks.append(nodes)
            continue
        while True:
            side = rng.integers(0, 2, size=len(nodes))
            if 0 < side.sum() < len(nodes):
                break
        blocks.append([u for u, s in zip(nodes, side) if s == 0])
        blocks.append([u for u, s in zip(nodes, side) if s == 1])
    return make_partition(partition.n, blocks)


def inverse_partition(sizes_a, sizes_b, n: int) -> tuple[Partition, Partition]:
    """A consecutive-range partition and its merge/split inversion.

    ``sizes_a`` lays out the original blocks over 0..n-1; ``sizes_b`` lays
    out the inverse over the same range (typically: the big block cut into
    the small sizes, the small blocks merged into one big).  Returns
    (original, inverse).
    """
    sizes_a = [int(s) for s in sizes_a]
    sizes_b = [int(s) for s in sizes_b]
    if sum(sizes_a) != n:
        raise SizeMismatchError(f"original sizes sum to {sum(sizes_a)}, expected {n}")
    if sum(sizes_b) != n:
        raise SizeMismatchError(f"inverse sizes sum to {sum(sizes_b)}, expected {n}")

    def ranges(sizes):
        bounds = np.concatenate(([0], np.cumsum(sizes)))
        return [range(bounds[i], bounds[i + 1]) for i in range(len(sizes))]

    return make_partition(n, ranges(sizes_a)), make_partition(n, ranges(sizes_b))


def merge_split_inverse_sizes(sizes) -> list[int]:
    """Inverse layout for a one-big-plus-many-small community structure.

    The first (big) block is cut into pieces the size of the small blocks,
    and the small blocks are merged into one block of the big size.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2:
        raise EdgeSbmError("need at least two blocks to invert")
    big, small = sizes[0], sizes[1:]
    if sum(small) != big:
        raise SizeMismatchError(
            f"small blocks sum to {sum(small)}, cannot tile the big block of {big}"
        )
    return small + [big]
