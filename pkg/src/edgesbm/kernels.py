"""Backend selection for the prediction-trace kernel.

Tries the compiled extension first and falls back to the numpy version;
``BACKEND`` records which one is active.  Both produce bitwise-identical
traces (the benchmark in benchmarks/bench_kernels.py compares their speed).
"""

import numpy as np

from . import _fallback

try:
    from . import _speedups

    _impl = _speedups.prediction_trace
    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on how the wheel was built
    _impl = _fallback.prediction_trace
    BACKEND = "numpy"


def prediction_trace_from_labels(
    labels: np.ndarray, pair_sizes_flat: np.ndarray, n: int
) -> np.ndarray:
    """Sequential prediction probability of every edge, by block-pair label.

    ``labels[k]`` is the flattened block-pair label of the k-th edge,
    ``pair_sizes_flat`` the flattened p*p table of |b_i|*|b_j|.
    """
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    pair_sizes_flat = np.ascontiguousarray(pair_sizes_flat, dtype=np.int64)
    m = labels.shape[0]
    out = np.empty(m, dtype=np.float64)
    scratch = np.zeros(pair_sizes_flat.shape[0], dtype=np.int64)
    _impl(labels, pair_sizes_flat, out, scratch, float(n) * float(n))
    return out
