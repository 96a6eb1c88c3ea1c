"""Node partitions, block probability matrices, and edge-sampling SBMs.

The model here is a probability distribution over single directed edges
(ordered node pairs, self-loops allowed): a partition of the nodes into p
blocks plus a p x p matrix whose entry (i, j) is the probability of drawing
any one particular edge from block i to block j.  A multigraph is m
independent draws from that distribution, so everything downstream works
with ordered edge lists in which duplicates are meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyEdgeListError,
    MatrixError,
    NodeRangeError,
    PartitionError,
    SizeMismatchError,
)

#: Absolute tolerance on the total probability mass of a block matrix.
MASS_TOLERANCE = 1e-9


def _frozen_array(values, dtype):
    arr = np.asarray(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Partition:
    """A disjoint cover of the nodes ``0..n-1`` by ordered non-empty blocks.

    ``labels[u]`` is the index of the block containing node ``u``; ``blocks``
    keeps the original block order, which is also the row/column order of any
    associated block matrix.  Instances are immutable; build them through
    :func:`make_partition`.
    """

    n: int
    blocks: tuple[frozenset[int], ...]
    labels: np.ndarray = field(repr=False)

    @property
    def p(self) -> int:
        """Number of blocks."""
        return len(self.blocks)

    @property
    def block_sizes(self) -> np.ndarray:
        return _frozen_array([len(b) for b in self.blocks], np.int64)

    def block_of(self, u: int) -> int:
        """Index of the block containing node ``u``."""
        if not 0 <= u < self.n:
            raise NodeRangeError(f"node {u} outside [0, {self.n})")
        return int(self.labels[u])

    def pair_sizes(self) -> np.ndarray:
        """p x p matrix of block-pair sizes |b_i|*|b_j|."""
        sizes = self.block_sizes
        return np.outer(sizes, sizes)

    def relabeled(self, perm) -> "Partition":
        """Apply a node permutation: node u becomes perm[u]."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise PartitionError("perm is not a permutation of 0..n-1")
        blocks = [frozenset(int(perm[u]) for u in b) for b in self.blocks]
        return make_partition(self.n, blocks)

    def refines(self, other: "Partition") -> bool:
        """True if every block of self lies inside a block of ``other``."""
        if self.n != other.n:
            return False
        return all(
            len({other.labels[u] for u in b}) == 1 for b in self.blocks
        )

    def __eq__(self, other):
        return (
            isinstance(other, Partition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.n, self.blocks))


def make_partition(n: int, blocks) -> Partition:
    """Validate and build a :class:`Partition`.

    Empty sets in ``blocks`` are dropped; block order is otherwise preserved.

    Raises:
        PartitionError: a node appears in two blocks, is missing, or is
            outside ``[0, n)``, or no non-empty block remains.
    """
    if n < 1:
        raise PartitionError(f"node count must be positive, got {n}")
    kept = [frozenset(int(u) for u in b) for b in blocks if len(b) > 0]
    if not kept:
        raise PartitionError("no non-empty block given")
    labels = np.full(n, -1, dtype=np.int64)
    for i, block in enumerate(kept):
        for u in block:
            if not 0 <= u < n:
                raise PartitionError(f"node {u} outside [0, {n})")
            if labels[u] != -1:
                raise PartitionError(
                    f"node {u} appears in blocks {labels[u]} and {i}"
                )
            labels[u] = i
    missing = np.flatnonzero(labels < 0)
    if missing.size:
        raise PartitionError(f"nodes not covered by any block: {missing.tolist()}")
    return Partition(n=n, blocks=tuple(kept), labels=_frozen_array(labels, np.int64))


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    """A p x p matrix of per-pair edge probabilities.

    Valid against a partition when every entry is in [0, 1] and the total
    mass sum_ij entries[i,j]*|b_i||b_j| equals 1 (within MASS_TOLERANCE).
    Build through :func:`validate_block_matrix` or :func:`renormalized`.
    """

    p: int
    entries: np.ndarray = field(repr=False)


def _mass(partition: Partition, entries: np.ndarray) -> float:
    return math.fsum((entries * partition.pair_sizes()).ravel())


def validate_block_matrix(partition: Partition, entries) -> BlockMatrix:
    """Check both matrix constraints and return the validated matrix.

    Raises:
        SizeMismatchError: dimensions differ from the partition block count.
        MatrixError: an entry is outside [0, 1], or the total mass deviates
            from 1 by more than MASS_TOLERANCE (the error carries the mass).
    """
    entries = np.asarray(entries, dtype=np.float64)
    p = partition.p
    if entries.shape != (p, p):
        raise SizeMismatchError(
            f"matrix shape {entries.shape} does not match p={p}"
        )
    if np.any(entries < 0.0) or np.any(entries > 1.0):
        raise MatrixError("matrix entries must lie in [0, 1]")
    mass = _mass(partition, entries)
    if abs(mass - 1.0) > MASS_TOLERANCE:
        raise MatrixError(
            f"total probability mass is {mass!r}, expected 1", mass=mass
        )
    return BlockMatrix(p=p, entries=_frozen_array(entries, np.float64))


def renormalized(partition: Partition, entries) -> BlockMatrix:
    """Scale ``entries`` by 1/mass so the matrix becomes exactly normalized.

    Repairs near-miss inputs (e.g. probabilities rounded for print) while
    preserving the relative weights of block pairs.
    """
    entries = np.asarray(entries, dtype=np.float64)
    if np.any(entries < 0.0):
        raise MatrixError("matrix entries must be non-negative")
    mass = _mass(partition, entries)
    if mass <= 0.0:
        raise MatrixError("cannot renormalize a zero matrix", mass=mass)
    return validate_block_matrix(partition, entries / mass)


@dataclass(frozen=True, eq=False)
class EdgeSbm:
    """A partition plus a matching block probability matrix."""

    partition: Partition
    matrix: BlockMatrix

    def __post_init__(self):
        if self.matrix.p != self.partition.p:
            raise SizeMismatchError(
                f"matrix p={self.matrix.p} vs partition p={self.partition.p}"
            )

    @property
    def n(self) -> int:
        return self.partition.n


@dataclass(frozen=True, eq=False)
class EdgeList:
    """An ordered sequence of directed edges on nodes ``0..n-1``.

    Duplicates and self-loops are allowed and significant; the order is data
    (sequential evaluation consumes edges left to right).  ``edges`` is an
    (m, 2) int64 array.
    """

    n: int
    edges: np.ndarray = field(repr=False)

    @staticmethod
    def create(n: int, edges) -> "EdgeList":
        arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n < 1:
            raise NodeRangeError(f"node count must be positive, got {n}")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            bad = arr[(arr < 0).any(axis=1) | (arr >= n).any(axis=1)][0]
            raise NodeRangeError(f"edge {tuple(bad)} outside [0, {n})^2")
        return EdgeList(n=n, edges=_frozen_array(arr, np.int64))

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def __len__(self) -> int:
        return self.m

    def permuted(self, order) -> "EdgeList":
        """Edge list reordered by the given permutation of 0..m-1."""
        order = np.asarray(order, dtype=np.int64)
        return EdgeList(n=self.n, edges=_frozen_array(self.edges[order], np.int64))

    def relabeled(self, perm) -> "EdgeList":
        """Apply a node permutation: node u becomes perm[u]."""
        perm = np.asarray(perm, dtype=np.int64)
        return EdgeList.create(self.n, perm[self.edges])


def edge_probability(model: EdgeSbm, u: int, v: int) -> float:
    """Probability of drawing the single edge u -> v from the model."""
    part = model.partition
    return float(model.matrix.entries[part.block_of(u), part.block_of(v)])


def pair_labels(partition: Partition, edges: EdgeList) -> np.ndarray:
    """Flattened block-pair label i*p+j for every edge, as an int64 array."""
    if edges.n != partition.n:
        raise SizeMismatchError(
            f"edge list n={edges.n} vs partition n={partition.n}"
        )
    lab = partition.labels
    return lab[edges.edges[:, 0]] * partition.p + lab[edges.edges[:, 1]]


def block_pair_counts(
    partition: Partition, edges: EdgeList, prefix_len: int | None = None
) -> np.ndarray:
    """Count edges per block pair among the first ``prefix_len`` edges.

    Entry (i, j) is the number of edges from block i to block j among
    ``e_1..e_x`` where ``x = prefix_len`` (defaults to all edges).
    """
    x = edges.m if prefix_len is None else prefix_len
    if not 0 <= x <= edges.m:
        raise SizeMismatchError(f"prefix length {x} outside [0, {edges.m}]")
    p = partition.p
    labels = pair_labels(partition, edges)[:x]
    return np.bincount(labels, minlength=p * p).reshape(p, p)


def edge_list_log_probability(model: EdgeSbm, edges: EdgeList) -> float:
    """log2 of the probability of drawing this exact edge sequence.

    Returns -inf as soon as any edge falls in a zero-probability block pair.
    """
    counts = block_pair_counts(model.partition, edges)
    entries = model.matrix.entries
    hit = counts > 0
    if np.any(entries[hit] == 0.0):
        return float("-inf")
    terms = counts[hit] * np.log2(entries[hit])
    return math.fsum(terms)


def empty_edge_list_guard(edges: EdgeList) -> None:
    if edges.m == 0:
        raise EmptyEdgeListError("edge list is empty")
