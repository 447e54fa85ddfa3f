"""Kernel backend selection.

The hot loops (scoring, hinge objective/subgradient, greedy evasion) exist in
two interchangeable implementations: numba-jitted and pure numpy. The env var
SECSVM_BACKEND=numba|numpy picks one at import; unset, numba is used when it
imports cleanly. set_backend() rebinds at runtime (used by the benchmark).
"""
from __future__ import annotations

import os

from . import _numpy

_IMPLS = {"numpy": _numpy}
try:
    from . import _numba
    _IMPLS["numba"] = _numba
except ImportError:  # numba missing or broken: numpy path stays available
    _numba = None

_active = None

decision_scores = None
hinge_objective = None
hinge_subgradient = None
evade_rows = None

_KERNELS = ("decision_scores", "hinge_objective", "hinge_subgradient", "evade_rows")


def set_backend(name):
    """Bind the named backend's kernels as this module's functions."""
    global _active
    if name not in _IMPLS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_IMPLS)}")
    impl = _IMPLS[name]
    for fn in _KERNELS:
        globals()[fn] = getattr(impl, fn)
    _active = name
    return impl


def active_backend():
    return _active


def available_backends():
    return sorted(_IMPLS)


def get_impl(name):
    """Direct handle on one backend's module (for comparisons/benchmarks)."""
    return _IMPLS[name]


_requested = os.environ.get("SECSVM_BACKEND", "").strip().lower()
if _requested:
    set_backend(_requested)
else:
    set_backend("numba" if "numba" in _IMPLS else "numpy")
