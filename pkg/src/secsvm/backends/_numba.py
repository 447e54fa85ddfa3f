"""Numba-jitted kernel implementations (default backend).

Same contracts as _numpy; plain sequential loops, no fastmath, so results are
deterministic and agree with the numpy backend to rounding.
"""
from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def decision_scores(indices, indptr, w, b):
    n = len(indptr) - 1
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        for j in range(indptr[i], indptr[i + 1]):
            acc += w[indices[j]]
        out[i] = acc + b
    return out


@njit(cache=True)
def hinge_objective(indices, indptr, y, w, b, C):
    n = len(indptr) - 1
    loss = 0.0
    for i in range(n):
        acc = 0.0
        for j in range(indptr[i], indptr[i + 1]):
            acc += w[indices[j]]
        margin = 1.0 - y[i] * (acc + b)
        if margin > 0.0:
            loss += margin
    reg = 0.0
    for k in range(len(w)):
        reg += w[k] * w[k]
    return 0.5 * reg + C * loss


@njit(cache=True)
def hinge_subgradient(indices, indptr, y, w, b, C):
    n = len(indptr) - 1
    grad_w = w.copy()
    grad_b = 0.0
    for i in range(n):
        acc = 0.0
        for j in range(indptr[i], indptr[i + 1]):
            acc += w[indices[j]]
        if y[i] * (acc + b) < 1.0:
            coef = -C * y[i]
            for j in range(indptr[i], indptr[i + 1]):
                grad_w[indices[j]] += coef
            grad_b += coef
    return grad_w, grad_b


@njit(cache=True)
def evade_rows(indices, indptr, attack_mask, order, can_add, can_remove, budget):
    n = len(indptr) - 1
    d = len(can_add)
    cap = len(indices) + n * min(budget, d) if budget > 0 else len(indices)
    out_indices = np.empty(cap, dtype=np.int64)
    out_indptr = np.zeros(n + 1, dtype=np.int64)
    flips = np.zeros(n, dtype=np.int64)
    present = np.zeros(d, dtype=np.bool_)
    added = np.empty(min(budget, d) if budget > 0 else 0, dtype=np.int64)
    pos = 0
    for i in range(n):
        start, end = indptr[i], indptr[i + 1]
        if not attack_mask[i] or budget == 0 or len(order) == 0:
            for j in range(start, end):
                out_indices[pos] = indices[j]
                pos += 1
            out_indptr[i + 1] = pos
            continue
        for j in range(start, end):
            present[indices[j]] = True
        n_added = 0
        n_flips = 0
        for oi in range(len(order)):
            if n_flips == budget:
                break
            k = order[oi]
            if present[k]:
                if can_remove[k]:
                    present[k] = False
                    n_flips += 1
            elif can_add[k]:
                present[k] = True
                added[n_added] = k
                n_added += 1
                n_flips += 1
        # merge surviving originals with sorted additions
        added_sorted = np.sort(added[:n_added])
        a = start
        c = 0
        while a < end and c < n_added:
            if indices[a] < added_sorted[c]:
                if present[indices[a]]:
                    out_indices[pos] = indices[a]
                    pos += 1
                a += 1
            else:
                out_indices[pos] = added_sorted[c]
                pos += 1
                c += 1
        while a < end:
            if present[indices[a]]:
                out_indices[pos] = indices[a]
                pos += 1
            a += 1
        while c < n_added:
            out_indices[pos] = added_sorted[c]
            pos += 1
            c += 1
        out_indptr[i + 1] = pos
        flips[i] = n_flips
        # reset scratch
        for j in range(start, end):
            present[indices[j]] = False
        for j in range(n_added):
            present[added_sorted[j]] = False
    return out_indices[:pos].copy(), out_indptr, flips
