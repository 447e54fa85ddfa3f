"""Synthetic redundant-signal benchmark generator.

Class signal is spread over two correlated groups of `redundancy` features
each: a malware-indicating group (all removable dexcode tags, so every copy
is attackable) and a benign-indicating group (tags alternate between dexcode
and manifest; additions are allowed either way). Features in a group copy
the group's latent class indicator with per-feature noise rates spread
around flip_noise, so an unconstrained learner concentrates weight on the
cleanest copies while redundancy leaves room to spread. The remaining
background features are manifest-tagged and present in every sample of both
classes, so no attack can add or remove them and the per-sample pool of
useful flips stays below twice the signal-group size. All noise is
per-feature, so redundant groups stay separable in aggregate and the
class-conditional feature frequencies have a closed form.

Deterministic per seed; every feature is forced active in at least one sample
so writing and re-parsing a generated dataset reproduces it exactly.
"""
from __future__ import annotations

import numpy as np

from .features import BENIGN, MALWARE, Dataset, FeatureSpace, SampleVector

# latent presence rates: (malware sample, benign sample)
MAL_GROUP_RATES = (0.95, 0.04)
BEN_GROUP_RATES = (0.08, 0.80)
NOISE_SPREAD = (0.4, 1.6)  # per-feature noise = flip_noise * linspace(spread)

_MAL_TAGS = ("S7", "S5")  # malware-signal copies live in removable sets
_BEN_TAGS = ("S6", "S3")
_BG_TAGS = ("S1", "S2", "S3", "S4")


def _signal_presence(latent_rate, noise):
    """P(feature = 1) when the feature copies a latent with XOR noise."""
    return latent_rate * (1.0 - noise) + (1.0 - latent_rate) * noise


def generate(n_benign, n_malware, d, redundancy, flip_noise, seed):
    """Build (dataset, expected_frequency) for the benchmark.

    expected_frequency maps each label to the per-feature activation
    probability conditioned on the observed label, in the dataset's feature
    order (exact up to the rare forced-coverage activations).
    """
    if n_benign < 1 or n_malware < 1:
        raise ValueError("need at least one sample per class")
    if redundancy < 1:
        raise ValueError("redundancy must be >= 1")
    if d < 2 * redundancy:
        raise ValueError(f"d={d} cannot hold two signal groups of {redundancy}")
    if not 0.0 <= flip_noise < 0.5:
        raise ValueError("flip_noise must lie in [0, 0.5)")

    rng = np.random.Generator(np.random.PCG64(seed))
    n = n_malware + n_benign
    n_bg = d - 2 * redundancy

    # construction order: mal group, ben group, background
    tokens = []
    for j in range(redundancy):
        tokens.append(f"{_MAL_TAGS[j % 2]}::mal{j:04d}")
    for j in range(redundancy):
        tokens.append(f"{_BEN_TAGS[j % 2]}::ben{j:04d}")
    for k in range(n_bg):
        tokens.append(f"{_BG_TAGS[k % 4]}::bg{k:04d}")

    noise = flip_noise * np.linspace(NOISE_SPREAD[0], NOISE_SPREAD[1], redundancy)

    labels = np.concatenate([np.full(n_malware, MALWARE, dtype=np.int64),
                             np.full(n_benign, BENIGN, dtype=np.int64)])
    is_malware = labels == MALWARE

    zm = rng.random(n) < np.where(is_malware, *MAL_GROUP_RATES)
    zb = rng.random(n) < np.where(is_malware, *BEN_GROUP_RATES)
    matrix = np.empty((n, d), dtype=bool)
    matrix[:, :redundancy] = zm[:, None] ^ (rng.random((n, redundancy)) < noise)
    matrix[:, redundancy:2 * redundancy] = zb[:, None] ^ (rng.random((n, redundancy)) < noise)
    matrix[:, 2 * redundancy:] = True

    # closed-form P(x_k = 1 | class), construction order
    ones = np.ones(n_bg)
    expected = {
        MALWARE: np.concatenate([
            _signal_presence(MAL_GROUP_RATES[0], noise),
            _signal_presence(BEN_GROUP_RATES[0], noise),
            ones,
        ]),
        BENIGN: np.concatenate([
            _signal_presence(MAL_GROUP_RATES[1], noise),
            _signal_presence(BEN_GROUP_RATES[1], noise),
            ones,
        ]),
    }

    # canonical feature order: sorted token string
    order = np.argsort(np.array(tokens))
    matrix = matrix[:, order]
    expected = {lab: p[order] for lab, p in expected.items()}
    sorted_tokens = [tokens[i] for i in order]

    # guarantee coverage so write + parse reproduces the dataset exactly
    dead = np.flatnonzero(~matrix.any(axis=0))
    for k in dead:
        matrix[k % n, k] = True

    space = FeatureSpace.from_tokens(sorted_tokens)
    samples = [SampleVector(np.flatnonzero(matrix[i]), int(labels[i])) for i in range(n)]
    return Dataset(space, samples), expected
