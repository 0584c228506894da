# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan for the best binary threshold split of a numeric column.

Inputs arrive pre-sorted by value; the scan walks candidate boundaries in
ascending value order and keeps the first maximum, so ties resolve to the
lowest threshold exactly like the pure-python backend.
"""

from libc.math cimport log2


cdef inline double _entropy(double pos, double total) nogil:
    cdef double p, q, h
    if total <= 0.0:
        return 0.0
    p = pos / total
    q = 1.0 - p
    h = 0.0
    if p > 0.0:
        h -= p * log2(p)
    if q > 0.0:
        h -= q * log2(q)
    return h


def best_split_sorted(double[::1] values, double[::1] weights, double[::1] weighted_fake):
    """Return (gain, threshold) for pre-sorted arrays, or None if unsplittable."""
    cdef Py_ssize_t n = values.shape[0]
    if n < 2:
        return None
    cdef double total_w = 0.0
    cdef double total_f = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        total_w += weights[i]
        total_f += weighted_fake[i]
    if total_w <= 0.0:
        return None
    cdef double h_parent = _entropy(total_f, total_w)
    cdef double left_w = 0.0
    cdef double left_f = 0.0
    cdef double best_gain = -1.0
    cdef double best_thr = 0.0
    cdef double gain, child
    cdef bint found = False
    for i in range(n - 1):
        left_w += weights[i]
        left_f += weighted_fake[i]
        if values[i] == values[i + 1]:
            continue
        child = (
            left_w * _entropy(left_f, left_w)
            + (total_w - left_w) * _entropy(total_f - left_f, total_w - left_w)
        ) / total_w
        gain = h_parent - child
        if gain > best_gain:
            best_gain = gain
            best_thr = 0.5 * (values[i] + values[i + 1])
            found = True
    if not found:
        return None
    return best_gain, best_thr
