"""Numpy implementation of the prediction-trace kernel.

Used when the compiled extension is unavailable.  The sequential dependency
(each edge sees the counts left by its predecessors) is resolved without a
Python loop: a stable argsort groups equal labels while preserving draw
order, so the rank of an edge inside its label group equals the number of
earlier edges with the same label.
"""

import numpy as np


def occurrence_ranks(labels: np.ndarray) -> np.ndarray:
    """For each position, the number of earlier positions with equal label."""
    m = labels.shape[0]
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    order = np.argsort(labels, kind="stable")
    sorted_labels = labels[order]
    idx = np.arange(m, dtype=np.int64)
    new_group = np.empty(m, dtype=bool)
    new_group[0] = True
    np.not_equal(sorted_labels[1:], sorted_labels[:-1], out=new_group[1:])
    group_start = np.maximum.accumulate(np.where(new_group, idx, 0))
    ranks = np.empty(m, dtype=np.int64)
    ranks[order] = idx - group_start
    return ranks


def prediction_trace(labels, pair_sizes, out, scratch_counts, n_sq):
    """Same contract and arithmetic as the compiled kernel.

    ``scratch_counts`` is accepted (and left holding the final per-label
    counts) only to keep the two backends drop-in interchangeable.
    """
    m = labels.shape[0]
    occ = occurrence_ranks(labels)
    s = pair_sizes[labels]
    remaining = m - np.arange(m, dtype=np.int64)
    # Same operation order as the compiled loop: c + ((m-k)*s)/n^2, then /(m*s)
    np.divide(occ + (remaining * s) / n_sq, m * s, out=out)
    np.add.at(scratch_counts, labels, 1)
    return out
