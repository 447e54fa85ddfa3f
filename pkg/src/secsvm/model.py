"""Linear decision functions over the binary feature space, plus model files.

A model is f(x) = w·x + b with classification rule: malware iff f(x) >= 0.
Model JSON files round-trip exactly: floats are serialized with Python's
shortest-round-trip repr.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import backends
from .errors import DatasetError
from .features import MALWARE, BENIGN, FeatureSpace

FORMAT = "secsvm-linear-model"


class LinearModel:
    """Immutable weights + bias tied to a feature space."""

    def __init__(self, w, b, space):
        w = np.asarray(w, dtype=np.float64).copy()
        if w.ndim != 1 or len(w) != space.dimension:
            raise DatasetError(
                f"weight vector length {w.shape} does not match dimension {space.dimension}"
            )
        if not np.all(np.isfinite(w)) or not math.isfinite(b):
            raise DatasetError("model weights and bias must be finite")
        w.flags.writeable = False
        self.w = w
        self.b = float(b)
        self.space = space

    @property
    def dimension(self):
        return self.space.dimension

    def __repr__(self):
        return f"LinearModel(d={self.dimension}, b={self.b:.4g})"


def _check_sample(model, x):
    if len(x.active) and x.active[-1] >= model.dimension:
        raise DatasetError(
            f"sample index {x.active[-1]} out of range for dimension {model.dimension}"
        )


def decision_function(model, x):
    """f(x) = w·x + b for one sample."""
    _check_sample(model, x)
    return float(model.w[x.active].sum()) + model.b


def decision_scores(model, data):
    """f(x) for every sample of a dataset (kernel-backed)."""
    if data.space.dimension != model.dimension:
        raise DatasetError("dataset dimension does not match model")
    indices, indptr = data.matrix()
    return backends.decision_scores(indices, indptr, model.w, model.b)


def classify(model, x):
    """+1 (malware) iff f(x) >= 0, else -1."""
    return MALWARE if decision_function(model, x) >= 0.0 else BENIGN


def sensitivity(model, x, x_prime, norm="l1"):
    """Score change per flipped feature: (f(x) - f(x')) / ||x - x'||_1."""
    if norm != "l1":
        raise ValueError(f"unsupported norm {norm!r}")
    _check_sample(model, x)
    _check_sample(model, x_prime)
    flips = np.setxor1d(x.active, x_prime.active, assume_unique=True)
    if len(flips) == 0:
        raise ValueError("samples are identical; sensitivity undefined")
    return (decision_function(model, x) - decision_function(model, x_prime)) / len(flips)


def l1_normalize(model):
    """Rescale so ||w||_1 == 1 (decision boundary unchanged)."""
    norm = float(np.abs(model.w).sum())
    if norm == 0.0:
        raise ValueError("cannot normalize an all-zero weight vector")
    return LinearModel(model.w / norm, model.b / norm, model.space)


@dataclass(frozen=True)
class WeightProfile:
    sorted_abs: np.ndarray  # |w| in descending order
    l1: float
    linf: float
    evenness: float  # linf / l1; in [1/d, 1] for nonzero w


def weight_profile(model):
    magnitudes = np.sort(np.abs(model.w))[::-1]
    l1 = float(magnitudes.sum())
    linf = float(magnitudes[0]) if len(magnitudes) else 0.0
    evenness = linf / l1 if l1 > 0.0 else float("nan")
    return WeightProfile(magnitudes, l1, linf, evenness)


def save_model(model, path):
    doc = {
        "format": FORMAT,
        "dimension": model.dimension,
        "bias": model.b,
        "weights": [float(v) for v in model.w],
        "feature_names": model.space.tokens(),
        "removable": [bool(r) for r in model.space.removable],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise DatasetError(f"{path}: invalid JSON ({e})") from e
    try:
        names = doc["feature_names"]
        removable = doc["removable"]
        weights = doc["weights"]
        bias = doc["bias"]
        dimension = doc["dimension"]
    except (KeyError, TypeError) as e:
        raise DatasetError(f"{path}: missing model field {e}") from e
    if not (len(names) == len(removable) == len(weights) == dimension):
        raise DatasetError(f"{path}: inconsistent model field lengths")
    space = FeatureSpace.from_tokens(names)
    if [bool(r) for r in removable] != [bool(r) for r in space.removable]:
        raise DatasetError(f"{path}: removable flags inconsistent with set tags")
    return LinearModel(np.array(weights, dtype=np.float64), float(bias), space)
