# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sequential loop for the per-edge prediction trace.

Mirrors edgesbm._fallback.prediction_trace: same arithmetic, same operation
order, so both backends produce bitwise-identical float64 traces.
"""


def prediction_trace(
    const long long[::1] labels,
    const long long[::1] pair_sizes,
    double[::1] out,
    long long[::1] scratch_counts,
    double n_sq,
):
    """Fill ``out[k]`` with the sequential prediction probability of edge k.

    ``labels`` is the flattened block-pair label of each edge in draw order,
    ``pair_sizes`` the flattened |b_i|*|b_j| table, ``scratch_counts`` a
    zeroed per-label counter (len == len(pair_sizes)).  For edge k (0-based,
    out of m total), with c prior edges on the same label and pair size s:

        out[k] = (c + (m - k) * s / n_sq) / (m * s)

    and the label count is incremented afterwards (strictly sequential
    protocol: the prediction never sees the edge it prices).
    """
    cdef Py_ssize_t k, m = labels.shape[0]
    cdef long long lab, s
    for k in range(m):
        lab = labels[k]
        s = pair_sizes[lab]
        out[k] = (
            <double> scratch_counts[lab]
            + (<double> ((m - k) * s)) / n_sq
        ) / (<double> (m * s))
        scratch_counts[lab] += 1
