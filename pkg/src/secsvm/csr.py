"""Helpers for the CSR-style arrays the kernels operate on.

A dataset's sparse binary matrix is held as (indices, indptr): indices is the
concatenation of every row's sorted active feature ids, indptr[i]:indptr[i+1]
delimits row i. Labels travel separately. Everything here is plain numpy and
shared by both kernel backends.
"""
from __future__ import annotations

import numpy as np


def from_rows(rows, dtype=np.int64):
    """Build (indices, indptr) from an iterable of per-row index arrays."""
    lengths = np.fromiter((len(r) for r in rows), dtype=np.int64)
    indptr = np.zeros(len(lengths) + 1, dtype=np.int64)
    np.cumsum(lengths, out=indptr[1:])
    if len(lengths):
        indices = np.concatenate([np.asarray(r, dtype=dtype) for r in rows]) \
            if indptr[-1] else np.empty(0, dtype=dtype)
    else:
        indices = np.empty(0, dtype=dtype)
    return indices, indptr


def take_rows(indices, indptr, rows):
    """Sub-CSR holding the given rows (repeats allowed), in the given order."""
    rows = np.asarray(rows, dtype=np.int64)
    lengths = indptr[rows + 1] - indptr[rows]
    sub_indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    np.cumsum(lengths, out=sub_indptr[1:])
    total = int(sub_indptr[-1])
    if total == 0:
        return np.empty(0, dtype=indices.dtype), sub_indptr
    # gather: for each output slot, source position = row start + offset within row
    starts = np.repeat(indptr[rows], lengths)
    offsets = np.arange(total, dtype=np.int64) - np.repeat(sub_indptr[:-1], lengths)
    return indices[starts + offsets], sub_indptr


def row_ids(indptr):
    """Row id of every nonzero, aligned with indices."""
    n = len(indptr) - 1
    return np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))


def remap_columns(indices, indptr, new_index_of):
    """Keep and renumber columns; new_index_of[k] < 0 drops column k.

    Row order is preserved; within a row the kept columns are re-sorted by
    their new ids so rows stay sorted when the mapping is not monotone.
    """
    mapped = new_index_of[indices]
    keep = mapped >= 0
    rows = row_ids(indptr)[keep]
    vals = mapped[keep]
    n = len(indptr) - 1
    counts = np.bincount(rows, minlength=n)
    new_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=new_indptr[1:])
    order = np.lexsort((vals, rows))
    return vals[order], new_indptr
