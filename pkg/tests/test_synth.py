"""Synthetic benchmark generator: determinism, structure, frequency oracle."""
import numpy as np
import pytest

import secsvm
from secsvm import features, synth


def test_determinism():
    d1, e1 = synth.generate(50, 50, 40, 6, 0.05, seed=3)
    d2, e2 = synth.generate(50, 50, 40, 6, 0.05, seed=3)
    assert d1 == d2
    for label in (secsvm.MALWARE, secsvm.BENIGN):
        assert np.array_equal(e1[label], e2[label])


def test_seed_changes_data():
    d1, _ = synth.generate(50, 50, 40, 6, 0.05, seed=3)
    d2, _ = synth.generate(50, 50, 40, 6, 0.05, seed=4)
    assert d1 != d2


def test_shape_and_labels():
    data, _ = synth.generate(30, 20, 25, 4, 0.02, seed=0)
    assert data.n == 50
    assert data.space.dimension == 25
    n_mal, n_ben = data.class_counts()
    assert n_mal == 20 and n_ben == 30


def test_redundancy_one_has_single_copy_per_direction():
    data, _ = synth.generate(40, 40, 10, 1, 0.02, seed=1)
    names = [d.name for d in data.space.descriptors]
    assert sum(1 for n in names if n.startswith("mal")) == 1
    assert sum(1 for n in names if n.startswith("ben")) == 1


def test_malware_signal_copies_are_removable():
    data, _ = synth.generate(20, 20, 30, 5, 0.02, seed=2)
    for desc in data.space.descriptors:
        if desc.name.startswith("mal"):
            assert desc.removable
        if desc.name.startswith("bg"):
            assert not desc.removable


def test_background_is_constant_active():
    data, _ = synth.generate(30, 30, 30, 5, 0.05, seed=5)
    bg = [d.index for d in data.space.descriptors if d.name.startswith("bg")]
    dense = np.zeros((data.n, 30), dtype=bool)
    for i, s in enumerate(data.samples):
        dense[i, s.active] = True
    assert dense[:, bg].all()


def test_frequencies_match_closed_form_within_3_sigma():
    n = 600
    data, expected = synth.generate(n, n, 60, 8, 0.04, seed=6)
    for label in (secsvm.MALWARE, secsvm.BENIGN):
        got = features.class_conditional_frequency(data, label)
        p = expected[label]
        sigma = np.sqrt(np.maximum(p * (1 - p), 1e-12) / n)
        # forced-coverage flips at most one cell per feature: allow 1/n slack
        assert np.all(np.abs(got - p) <= 3 * sigma + 1.5 / n)


def test_round_trip_through_files(tmp_path):
    data, _ = synth.generate(60, 60, 40, 6, 0.03, seed=7)
    path = str(tmp_path / "synth.txt")
    features.write_dataset(data, path)
    again = features.parse_dataset(path)
    assert again == data


def test_argument_validation():
    with pytest.raises(ValueError):
        synth.generate(0, 10, 20, 2, 0.05, seed=0)
    with pytest.raises(ValueError):
        synth.generate(10, 10, 20, 0, 0.05, seed=0)
    with pytest.raises(ValueError):
        synth.generate(10, 10, 5, 4, 0.05, seed=0)  # d too small
    with pytest.raises(ValueError):
        synth.generate(10, 10, 20, 2, 0.8, seed=0)
