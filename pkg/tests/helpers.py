"""Shared test utilities: the numeric predictor oracle and random instances.

The oracle minimizes the sequential coding objective directly with a
general-purpose constrained optimizer, never using the closed form it is
meant to check.
"""

import numpy as np
from scipy.optimize import minimize

from edgesbm import EdgeList, Partition, make_partition


def numeric_predictor_matrix(
    partition: Partition, edges: EdgeList, x: int, m: int
) -> np.ndarray:
    """Brute-force minimizer of the sequential coding objective.

    Minimizes, over block-constant pair distributions Q (entries q_ij >= 0
    with sum_ij s_ij * q_ij = 1):

        x * code_len(e_1..e_x, Q) / m
            - sum over all n^2 pairs of (m - x) / (m * n^2) * log2(Q[u, v])

    where code_len is the empirical cross-entropy of the first x edges
    under Q.  Works pair-by-pair (no count tables) so it stays independent
    of the closed-form implementation.
    """
    n = partition.n
    p = partition.p
    labels = partition.labels

    observed = {}
    for u, v in edges.edges[:x].tolist():
        observed[(u, v)] = observed.get((u, v), 0) + 1

    def objective(q_flat):
        q = q_flat.reshape(p, p)
        total = 0.0
        if x > 0:
            code_len = 0.0
            for (u, v), count in observed.items():
                code_len -= (count / x) * np.log2(q[labels[u], labels[v]])
            total += x * code_len / m
        for u in range(n):
            for v in range(n):
                total -= (m - x) / (m * n * n) * np.log2(q[labels[u], labels[v]])
        return total

    sizes = np.array([len(b) for b in partition.blocks], dtype=float)
    s_flat = np.outer(sizes, sizes).ravel()
    q0 = np.full(p * p, 1.0 / (n * n))
    result = minimize(
        objective,
        q0,
        method="SLSQP",
        bounds=[(1e-12, 1.0)] * (p * p),
        constraints=[{"type": "eq", "fun": lambda q: float(np.dot(s_flat, q) - 1.0)}],
        options={"maxiter": 1000, "ftol": 1e-14},
    )
    assert result.success, result.message
    return result.x.reshape(p, p)


def random_small_instance(rng):
    """A random (partition, edges, x, m) with n <= 5, p <= 3, m <= 8."""
    n = int(rng.integers(2, 6))
    p = int(rng.integers(1, min(3, n) + 1))
    while True:
        labels = rng.integers(0, p, size=n)
        if len(np.unique(labels)) == p:
            break
    blocks = [np.flatnonzero(labels == i) for i in range(p)]
    partition = make_partition(n, blocks)
    m = int(rng.integers(1, 9))
    x = int(rng.integers(0, m))
    edges = EdgeList.create(n, rng.integers(0, n, size=(m, 2)))
    return partition, edges, x, m


def random_partition_of(n, p, rng) -> Partition:
    assert 1 <= p <= n
    while True:
        labels = rng.integers(0, p, size=n)
        if len(np.unique(labels)) == p:
            return make_partition(n, [np.flatnonzero(labels == i) for i in range(p)])
