"""Best-threshold split search, with a compiled core when available.

The compiled extension is selected at import time; set FAKESCOPE_NO_EXT=1
to force the numpy fallback. Both backends receive identically sorted
input and break gain ties toward the lowest threshold.
"""

from __future__ import annotations

import os
from typing import Optional

import numpy as np

try:
    if os.environ.get("FAKESCOPE_NO_EXT") == "1":
        _fastsplit = None
    else:
        from fakescope import _fastsplit
except ImportError:
    _fastsplit = None

BACKEND = "compiled" if _fastsplit is not None else "python"


def _entropy_pair(pos: np.ndarray, total: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(total > 0, pos / np.where(total > 0, total, 1.0), 0.0)
        q = 1.0 - p
        h = np.zeros_like(p)
        mask = p > 0
        h[mask] -= p[mask] * np.log2(p[mask])
        mask = q > 0
        h[mask] -= q[mask] * np.log2(q[mask])
    return h


def binary_entropy(pos: float, total: float) -> float:
    if total <= 0:
        return 0.0
    return float(_entropy_pair(np.asarray([pos], float), np.asarray([total], float))[0])


def _best_split_sorted_py(
    v: np.ndarray, w: np.ndarray, wf: np.ndarray
) -> Optional[tuple[float, float]]:
    total_w = float(w.sum())
    total_f = float(wf.sum())
    if total_w <= 0.0 or v.shape[0] < 2:
        return None
    cuts = np.nonzero(v[1:] != v[:-1])[0]
    if cuts.size == 0:
        return None
    cw = np.cumsum(w)
    cwf = np.cumsum(wf)
    lw = cw[cuts]
    lf = cwf[cuts]
    rw = total_w - lw
    rf = total_f - lf
    h_parent = binary_entropy(total_f, total_w)
    child = (lw * _entropy_pair(lf, lw) + rw * _entropy_pair(rf, rw)) / total_w
    gains = h_parent - child
    best = int(np.argmax(gains))  # first max: lowest threshold wins ties
    threshold = 0.5 * float(v[cuts[best]] + v[cuts[best] + 1])
    return float(gains[best]), threshold


def best_threshold_split(
    values: np.ndarray,
    y: np.ndarray,
    weights: Optional[np.ndarray] = None,
) -> Optional[tuple[float, float]]:
    """Best (gain, threshold) for splitting `values <= t` against binary `y`.

    Returns None when no split exists (fewer than two distinct values).
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if weights is None:
        weights = np.ones_like(values)
    else:
        weights = np.ascontiguousarray(weights, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    v = values[order]
    w = weights[order]
    wf = w * y[order]
    if _fastsplit is not None:
        return _fastsplit.best_split_sorted(
            np.ascontiguousarray(v), np.ascontiguousarray(w), np.ascontiguousarray(wf)
        )
    return _best_split_sorted_py(v, w, wf)
