"""Pure-numpy kernel implementations.

Reference semantics for the numba backend; selected with SECSVM_BACKEND=numpy.
"""
from __future__ import annotations

import numpy as np

NAME = "numpy"


def decision_scores(indices, indptr, w, b):
    """Per-row w·x + b for a sparse binary matrix."""
    n = len(indptr) - 1
    if len(indices) == 0:
        return np.full(n, b, dtype=np.float64)
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    return np.bincount(rows, weights=w[indices], minlength=n) + b


def hinge_objective(indices, indptr, y, w, b, C):
    """0.5*||w||^2 + C * sum_i max(0, 1 - y_i (w·x_i + b))."""
    margins = 1.0 - y * decision_scores(indices, indptr, w, b)
    return 0.5 * float(w @ w) + C * float(np.sum(margins[margins > 0.0]))


def hinge_subgradient(indices, indptr, y, w, b, C):
    """Subgradient of hinge_objective at (w, b); rows at the kink contribute 0."""
    n = len(indptr) - 1
    scores = decision_scores(indices, indptr, w, b)
    coef = np.where(y * scores < 1.0, -C * y, 0.0)
    grad_w = w.copy()
    if len(indices):
        rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
        grad_w += np.bincount(indices, weights=coef[rows], minlength=len(w))
    return grad_w, float(coef.sum())


def evade_rows(indices, indptr, attack_mask, order, can_add, can_remove, budget):
    """Greedy feature flipping, one pass over `order` per attacked row.

    order lists candidate feature ids by priority; can_add / can_remove give
    each feature's allowed direction. A feature is flipped when its current
    value permits the allowed direction; each flip consumes budget. Rows with
    attack_mask False are copied through. Returns (indices, indptr, flips).
    """
    n = len(indptr) - 1
    d = len(can_add)
    out_rows = []
    flips = np.zeros(n, dtype=np.int64)
    present = np.zeros(d, dtype=bool)
    for i in range(n):
        active = indices[indptr[i]:indptr[i + 1]]
        if not attack_mask[i] or budget == 0 or len(order) == 0:
            out_rows.append(active)
            continue
        present[active] = True
        eligible = np.where(present[order], can_remove[order], can_add[order])
        chosen = order[eligible][:budget]
        present[active] = False
        if len(chosen) == 0:
            out_rows.append(active)
            continue
        chosen_present = np.isin(chosen, active, assume_unique=True)
        removed = chosen[chosen_present]
        added = chosen[~chosen_present]
        new_active = np.union1d(np.setdiff1d(active, removed, assume_unique=True), added)
        out_rows.append(new_active.astype(np.int64))
        flips[i] = len(chosen)
    lengths = np.fromiter((len(r) for r in out_rows), dtype=np.int64, count=n)
    out_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(lengths, out=out_indptr[1:])
    out_indices = np.concatenate(out_rows) if out_indptr[-1] else np.empty(0, dtype=np.int64)
    return out_indices.astype(np.int64, copy=False), out_indptr, flips
