"""Shared fixtures: small dataset builders plus a feasibility guard wrapped
around every training run in the suite.
"""
import numpy as np
import pytest

import secsvm
from secsvm import features, training
from secsvm.features import Dataset, FeatureSpace, SampleVector

# counters filled by the guard below; the acceptance suite asserts on them
FEASIBILITY = {"runs": 0, "iterations": 0, "violations": 0}


@pytest.fixture(scope="session", autouse=True)
def feasibility_guard():
    """Wrap train() so every post-projection iterate is bounds-checked.

    Both secsvm.training.train and the from-import binding in secsvm.ensemble
    are patched, so ensemble bases and cross-validation folds are covered too.
    """
    original = training.train

    def guarded(data, config, iteration_hook=None):
        d = data.space.dimension
        lb, ub = config.bounds.as_arrays(d)

        def hook(state):
            FEASIBILITY["iterations"] += 1
            # exact comparison: projection is np.clip, not clip-plus-epsilon
            if not (np.all(state.w >= lb) and np.all(state.w <= ub)):
                FEASIBILITY["violations"] += 1
            if iteration_hook is not None:
                iteration_hook(state)

        FEASIBILITY["runs"] += 1
        return original(data, config, iteration_hook=hook)

    training.train = guarded
    secsvm.ensemble.train = guarded
    secsvm.train = guarded
    yield
    training.train = original
    secsvm.ensemble.train = original
    secsvm.train = original
    assert FEASIBILITY["violations"] == 0, (
        f"bounds violated in {FEASIBILITY['violations']} of "
        f"{FEASIBILITY['iterations']} checked iterates")


def toy_space(d, tag="S5"):
    """d features under one set tag; S5 (dexcode) is removable."""
    return FeatureSpace.from_tokens([f"{tag}::f{i:03d}" for i in range(d)])


def mixed_space(d):
    """Alternating manifest (locked) and dexcode (removable) features."""
    tags = ["S2", "S7"]
    return FeatureSpace.from_tokens(
        [f"{tags[i % 2]}::f{i:03d}" for i in range(d)])


def random_dataset(n, d, seed, space=None, density=0.3):
    """Random binary dataset with both classes present."""
    rng = np.random.Generator(np.random.PCG64(seed))
    if space is None:
        space = toy_space(d)
    samples = []
    for i in range(n):
        active = np.flatnonzero(rng.random(d) < density)
        label = secsvm.MALWARE if i % 2 == 0 else secsvm.BENIGN
        samples.append(SampleVector(active, label))
    return Dataset(space, samples)


def separable_dataset(n, d, seed):
    """Half malware carrying low-index features, half benign on high indices."""
    rng = np.random.Generator(np.random.PCG64(seed))
    space = toy_space(d)
    half = d // 2
    samples = []
    for i in range(n):
        if i % 2 == 0:
            active = np.flatnonzero(rng.random(half) < 0.8)
            samples.append(SampleVector(active, secsvm.MALWARE))
        else:
            active = half + np.flatnonzero(rng.random(d - half) < 0.8)
            samples.append(SampleVector(active, secsvm.BENIGN))
    return Dataset(space, samples)
