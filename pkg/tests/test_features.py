"""Feature space, dataset IO, selection, and split behavior."""
import numpy as np
import pytest

import secsvm
from secsvm import features
from secsvm.errors import DatasetError, ParseError
from secsvm.features import Dataset, FeatureSpace, SampleVector

from conftest import random_dataset, toy_space


def write_lines(tmp_path, text, name="data.txt"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_parse_minimal(tmp_path):
    path = write_lines(tmp_path, "+1 S2::perm.SEND_SMS S7::api.getDeviceId\n")
    data = features.parse_dataset(path)
    assert data.space.dimension == 2
    assert data.n == 1
    assert list(data.samples[0].active) == [0, 1]
    assert data.samples[0].label == secsvm.MALWARE


def test_parse_collapses_duplicates(tmp_path):
    path = write_lines(tmp_path, "+1 S2::perm.X S2::perm.X\n")
    data = features.parse_dataset(path)
    assert list(data.samples[0].active) == [0]


def test_parse_fresh_space_order_is_sorted_tokens(tmp_path):
    # canonical fresh-space ordering: sorted token strings, not file order
    path = write_lines(tmp_path, "-1 S7::zz S2::aa\n+1 S5::mm\n")
    data = features.parse_dataset(path)
    assert data.space.tokens() == ["S2::aa", "S5::mm", "S7::zz"]


def test_parse_label_forms_and_comments(tmp_path):
    path = write_lines(tmp_path, "# a comment\n1 S5::a\n-1 S5::b\n+1 S5::a S5::b\n")
    data = features.parse_dataset(path)
    assert [s.label for s in data.samples] == [1, -1, 1]


def test_parse_bad_label_reports_line(tmp_path):
    path = write_lines(tmp_path, "+1 S5::a\n+2 S5::b\n")
    with pytest.raises(ParseError) as e:
        features.parse_dataset(path)
    assert "2" in str(e.value)


def test_parse_bad_tag_is_error(tmp_path):
    path = write_lines(tmp_path, "+1 S9::nope\n")
    with pytest.raises(ParseError):
        features.parse_dataset(path)


def test_parse_empty_file_is_error(tmp_path):
    path = write_lines(tmp_path, "")
    with pytest.raises(DatasetError):
        features.parse_dataset(path)


def test_parse_with_space_drops_unknown_tokens(tmp_path):
    space = toy_space(2)
    path = write_lines(tmp_path, "+1 S5::f000 S5::unknown\n")
    data = features.parse_dataset(path, space)
    assert data.space is space
    assert list(data.samples[0].active) == [0]


def test_removability_by_tag():
    for tag in features.MANIFEST_TAGS:
        assert not features.removable_for_tag(tag)
    for tag in features.DEXCODE_TAGS:
        assert features.removable_for_tag(tag)


def test_write_parse_round_trip(tmp_path):
    data = random_dataset(40, 12, seed=3)
    path = str(tmp_path / "rt.txt")
    features.write_dataset(data, path)
    again = features.parse_dataset(path)
    assert again == data


def test_write_is_canonical(tmp_path):
    # rewriting a parsed file reproduces it byte for byte
    data = random_dataset(25, 9, seed=4)
    p1 = str(tmp_path / "a.txt")
    p2 = str(tmp_path / "b.txt")
    features.write_dataset(data, p1)
    features.write_dataset(features.parse_dataset(p1), p2)
    assert open(p1, "rb").read() == open(p2, "rb").read()


def test_class_conditional_frequency_counting():
    space = toy_space(4)
    samples = [
        SampleVector([0, 1], secsvm.MALWARE),
        SampleVector([0], secsvm.MALWARE),
        SampleVector([2], secsvm.BENIGN),
    ]
    data = Dataset(space, samples)
    f_mal = features.class_conditional_frequency(data, secsvm.MALWARE)
    assert np.allclose(f_mal, [1.0, 0.5, 0.0, 0.0])
    f_ben = features.class_conditional_frequency(data, secsvm.BENIGN)
    assert np.allclose(f_ben, [0.0, 0.0, 1.0, 0.0])


def test_class_conditional_frequency_matches_dense_count():
    data = random_dataset(30, 10, seed=9)
    dense = np.zeros((30, 10))
    for i, s in enumerate(data.samples):
        dense[i, s.active] = 1.0
    for label in (secsvm.MALWARE, secsvm.BENIGN):
        rows = dense[data.labels == label]
        got = features.class_conditional_frequency(data, label)
        assert np.array_equal(got, rows.mean(axis=0))


def test_class_conditional_frequency_missing_label():
    space = toy_space(2)
    data = Dataset(space, [SampleVector([0], secsvm.MALWARE)])
    with pytest.raises(DatasetError):
        features.class_conditional_frequency(data, secsvm.BENIGN)


def test_discriminability_is_absolute_difference():
    data = random_dataset(40, 8, seed=11)
    f_mal = features.class_conditional_frequency(data, secsvm.MALWARE)
    f_ben = features.class_conditional_frequency(data, secsvm.BENIGN)
    assert np.array_equal(features.discriminability(data), np.abs(f_mal - f_ben))


def test_select_features_top2_with_tiebreak():
    # scores (0.9, 0.1, 0.9): top-2 keeps features 0 and 2 in that order
    space = toy_space(3)
    samples = []
    for _ in range(10):
        samples.append(SampleVector([0, 2], secsvm.MALWARE))
        samples.append(SampleVector([], secsvm.BENIGN))
    # give feature 1 a small difference: active in one malware sample only
    samples[0] = SampleVector([0, 1, 2], secsvm.MALWARE)
    data = Dataset(space, samples)
    reduced_space, reduced = features.select_features(data, 2)
    assert reduced_space.tokens() == [space.tokens()[0], space.tokens()[2]]
    # samples are reindexed into the reduced space
    assert list(reduced.samples[0].active) == [0, 1]
    assert reduced.space.dimension == 2


def test_select_features_matches_sort_oracle():
    data = random_dataset(60, 50, seed=13)
    scores = features.discriminability(data)
    order = np.lexsort((np.arange(50), -scores))
    for d_prime in (1, 7, 50):
        reduced_space, _ = features.select_features(data, d_prime)
        want = [data.space.tokens()[i] for i in order[:d_prime]]
        assert reduced_space.tokens() == want


def test_select_features_dprime_too_large_keeps_all():
    data = random_dataset(20, 6, seed=14)
    with pytest.warns(UserWarning):
        reduced_space, reduced = features.select_features(data, 10)
    assert reduced_space.dimension == 6
    assert reduced.n == data.n


def test_select_features_preserves_removability():
    space = FeatureSpace.from_tokens(["S1::a", "S5::b", "S2::c", "S6::d"])
    samples = [SampleVector([0, 1], secsvm.MALWARE),
               SampleVector([2, 3], secsvm.BENIGN)]
    data = Dataset(space, samples)
    reduced_space, _ = features.select_features(data, 4)
    for desc in reduced_space.descriptors:
        assert desc.removable == features.removable_for_tag(desc.set_tag)


def test_split_all_train():
    data = random_dataset(30, 5, seed=1)
    tr, surr, te = features.split(data, (1.0, 0.0, 0.0), seed=0)
    assert tr.n == 30 and surr.n == 0 and te.n == 0


def test_split_disjoint_cover_and_determinism():
    data = random_dataset(100, 6, seed=2)
    tr1, s1, te1 = features.split(data, (0.5, 0.2, 0.3), seed=7)
    tr2, s2, te2 = features.split(data, (0.5, 0.2, 0.3), seed=7)
    assert tr1.n + s1.n + te1.n == 100
    assert tr1 == tr2 and s1 == s2 and te1 == te2
    # counts follow the fractions
    assert tr1.n == 50 and s1.n == 20 and te1.n == 30


def test_split_seed_changes_partition():
    data = random_dataset(1000, 4, seed=3)
    tr1, _, _ = features.split(data, (0.5, 0.25, 0.25), seed=1)
    tr2, _, _ = features.split(data, (0.5, 0.25, 0.25), seed=2)
    assert tr1 != tr2


def test_split_remainder_goes_to_test():
    # stated test fraction is 0.1 but everything undrawn lands in test
    data = random_dataset(10, 4, seed=5)
    tr, surr, te = features.split(data, (0.5, 0.2, 0.1), seed=0)
    assert (tr.n, surr.n, te.n) == (5, 2, 3)
    with pytest.raises(ValueError):
        features.split(data, (0.9, 0.2, 0.0), seed=0)


def test_restrict_to_tags_manifest_only():
    space = FeatureSpace.from_tokens(["S1::a", "S5::b", "S2::c", "S6::d"])
    samples = [SampleVector([0, 1, 3], secsvm.MALWARE),
               SampleVector([2], secsvm.BENIGN)]
    data = Dataset(space, samples)
    reduced_space, reduced = features.restrict_to_tags(data, features.MANIFEST_TAGS)
    assert reduced_space.tokens() == ["S1::a", "S2::c"]
    assert list(reduced.samples[0].active) == [0]
    assert list(reduced.samples[1].active) == [1]


def test_project_to_space_reindexes_and_drops():
    big = FeatureSpace.from_tokens(["S5::a", "S5::b", "S5::c"])
    small = FeatureSpace.from_tokens(["S5::c", "S5::a"])
    data = Dataset(big, [SampleVector([0, 1, 2], secsvm.MALWARE),
                         SampleVector([1], secsvm.BENIGN)])
    proj = features.project_to_space(data, small)
    assert proj.space is small
    assert list(proj.samples[0].active) == [0, 1]
    assert list(proj.samples[1].active) == []


def test_sample_vector_validation():
    with pytest.raises(DatasetError):
        SampleVector([2, 1], secsvm.MALWARE)
    with pytest.raises(DatasetError):
        SampleVector([0, 0], secsvm.MALWARE)
    with pytest.raises(DatasetError):
        SampleVector([0], 0)


def test_dataset_rejects_out_of_range_index():
    space = toy_space(2)
    with pytest.raises(DatasetError):
        Dataset(space, [SampleVector([5], secsvm.MALWARE)])
