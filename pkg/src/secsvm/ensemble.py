"""Multiple-classifier-system baseline: averaged bagged linear learners.

Each base learner trains on a bootstrap sample (drawn with replacement) over
a uniformly drawn feature subset; features outside a learner's subset keep
weight zero. The ensemble collapses to a single linear model by averaging the
zero-padded weight vectors and the biases, so ensemble scoring is exactly the
mean of base scores. sample_frac or feature_frac equal to 1.0 means no
resampling at all, making (n_base=1, 1.0, 1.0) identical to plain training.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DatasetError
from .features import _reindex
from .model import LinearModel
from .training import TrainConfig, train

_BAG_RETRIES = 10


@dataclass(frozen=True)
class EnsembleConfig:
    n_base: int = 50
    sample_frac: float = 0.8
    feature_frac: float = 0.5
    base_config: TrainConfig = field(default_factory=TrainConfig)
    seed: int = 0

    def __post_init__(self):
        if self.n_base < 1:
            raise ValueError("n_base must be >= 1")
        if not 0.0 < self.sample_frac <= 1.0 or not 0.0 < self.feature_frac <= 1.0:
            raise ValueError("fractions must lie in (0, 1]")


def base_seeds(config):
    """Per-learner bag/subspace seeds, a pure function of the ensemble seed."""
    rng = np.random.Generator(np.random.PCG64(config.seed))
    return [int(s) for s in rng.integers(0, 2**63, size=config.n_base)]


def _draw_bag(rng, labels, n_bag):
    """Bootstrap rows containing both classes, with bounded retries."""
    for _ in range(_BAG_RETRIES):
        rows = rng.integers(0, len(labels), size=n_bag)
        picked = labels[rows]
        if (picked == 1).any() and (picked == -1).any():
            return rows
    raise DatasetError(f"could not draw a two-class bootstrap sample "
                       f"in {_BAG_RETRIES} tries")


def train_mcs_detailed(data, config):
    """Train the ensemble; returns (model, base_models, base_feature_sets)."""
    n = data.n
    d = data.space.dimension
    labels = data.labels
    n_bag = max(1, int(round(config.sample_frac * n)))
    n_feat = max(1, int(round(config.feature_frac * d)))
    seeds = base_seeds(config)
    w_sum = np.zeros(d, dtype=np.float64)
    b_sum = 0.0
    base_models = []
    base_features = []
    for seed in seeds:
        rng = np.random.Generator(np.random.PCG64(seed))
        if config.sample_frac == 1.0:
            rows = np.arange(n)
        else:
            rows = _draw_bag(rng, labels, n_bag)
        if config.feature_frac == 1.0:
            feats = np.arange(d)
            part = data.subset(rows) if config.sample_frac != 1.0 else data
        else:
            feats = np.sort(rng.choice(d, size=n_feat, replace=False))
            _, part = _reindex(data.subset(rows), feats)
        base, _ = train(part, config.base_config)
        w_full = np.zeros(d, dtype=np.float64)
        w_full[feats] = base.w
        w_sum += w_full
        b_sum += base.b
        base_models.append(base)
        base_features.append(feats)
    model = LinearModel(w_sum / config.n_base, b_sum / config.n_base, data.space)
    return model, base_models, base_features


def train_mcs(data, config):
    """Averaged ensemble as a single LinearModel on the full space."""
    model, _, _ = train_mcs_detailed(data, config)
    return model
