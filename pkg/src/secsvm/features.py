"""Binary feature universe and the sparse dataset text format.

A feature is a string token "SETTAG::name" where SETTAG is one of S1..S8.
S1..S4 are manifest sets (an attacker can never remove those features from a
sample); S5..S8 are dexcode sets (removable). Datasets are UTF-8 text, one
sample per line:

    <label> <feat> <feat> ...

with label +1/1 (malware) or -1 (benign); '#' starts a comment line; blank
lines are skipped. The canonical writer emits labels as "+1"/"-1" and sorts
each line's features by index, so write(parse(f)) is a normal form.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import csr
from .errors import DatasetError, ParseError

MANIFEST_TAGS = ("S1", "S2", "S3", "S4")
DEXCODE_TAGS = ("S5", "S6", "S7", "S8")
SET_TAGS = MANIFEST_TAGS + DEXCODE_TAGS

MALWARE = 1
BENIGN = -1


def removable_for_tag(set_tag):
    """Manifest features are locked; dexcode features may be removed."""
    return set_tag in DEXCODE_TAGS


@dataclass(frozen=True)
class FeatureDescriptor:
    index: int
    set_tag: str
    name: str
    removable: bool

    def __post_init__(self):
        if self.set_tag not in SET_TAGS:
            raise DatasetError(f"unknown set tag {self.set_tag!r}")
        if not self.name:
            raise DatasetError("empty feature name")
        if self.removable != removable_for_tag(self.set_tag):
            raise DatasetError(
                f"removable={self.removable} inconsistent with tag {self.set_tag}"
            )

    @property
    def token(self):
        return f"{self.set_tag}::{self.name}"


def _split_token(token, line=None):
    tag, sep, name = token.partition("::")
    if not sep or tag not in SET_TAGS or not name:
        raise ParseError(f"malformed feature token {token!r}", line=line)
    return tag, name


class FeatureSpace:
    """Immutable ordered universe of features; names are unique."""

    def __init__(self, descriptors):
        descriptors = tuple(descriptors)
        names = set()
        for i, desc in enumerate(descriptors):
            if desc.index != i:
                raise DatasetError(f"descriptor index {desc.index} at position {i}")
            if desc.name in names:
                raise DatasetError(f"duplicate feature name {desc.name!r}")
            names.add(desc.name)
        self.descriptors = descriptors
        self._index_of = {d.token: d.index for d in descriptors}
        self.removable = np.array([d.removable for d in descriptors], dtype=bool)
        self.removable.flags.writeable = False

    @classmethod
    def from_tokens(cls, tokens):
        descs = []
        for i, token in enumerate(tokens):
            tag, name = _split_token(token)
            descs.append(FeatureDescriptor(i, tag, name, removable_for_tag(tag)))
        return cls(descs)

    @property
    def dimension(self):
        return len(self.descriptors)

    def tokens(self):
        return [d.token for d in self.descriptors]

    def index_of(self, token):
        return self._index_of.get(token)

    def __len__(self):
        return len(self.descriptors)

    def __eq__(self, other):
        return isinstance(other, FeatureSpace) and self.descriptors == other.descriptors

    def __repr__(self):
        return f"FeatureSpace(d={self.dimension})"


class SampleVector:
    """One sparse binary sample: sorted unique active indices plus a label."""

    __slots__ = ("active", "label")

    def __init__(self, active, label):
        active = np.asarray(active, dtype=np.int64)
        if active.ndim != 1:
            raise DatasetError("active indices must be one-dimensional")
        if len(active) and (np.any(np.diff(active) <= 0) or active[0] < 0):
            raise DatasetError("active indices must be sorted, unique, non-negative")
        if label not in (MALWARE, BENIGN):
            raise DatasetError(f"label must be +1 or -1, got {label!r}")
        active.flags.writeable = False
        self.active = active
        self.label = int(label)

    def __eq__(self, other):
        return (isinstance(other, SampleVector) and self.label == other.label
                and np.array_equal(self.active, other.active))

    def __repr__(self):
        return f"SampleVector(label={self.label:+d}, nnz={len(self.active)})"


class Dataset:
    """A feature space plus an ordered list of samples."""

    def __init__(self, space, samples):
        samples = list(samples)
        d = space.dimension
        for s in samples:
            if len(s.active) and s.active[-1] >= d:
                raise DatasetError(f"feature index {s.active[-1]} out of range (d={d})")
        self.space = space
        self.samples = samples
        self._csr = None
        self._labels = None

    @property
    def n(self):
        return len(self.samples)

    @property
    def labels(self):
        if self._labels is None:
            lab = np.array([s.label for s in self.samples], dtype=np.int64)
            lab.flags.writeable = False
            self._labels = lab
        return self._labels

    def matrix(self):
        """(indices, indptr) CSR view for the kernels; built once, cached."""
        if self._csr is None:
            indices, indptr = csr.from_rows([s.active for s in self.samples])
            indices.flags.writeable = False
            indptr.flags.writeable = False
            self._csr = (indices, indptr)
        return self._csr

    def subset(self, rows):
        """New Dataset with the given rows (repeats allowed), same space."""
        return Dataset(self.space, [self.samples[int(r)] for r in rows])

    def class_counts(self):
        lab = self.labels
        return int(np.sum(lab == MALWARE)), int(np.sum(lab == BENIGN))

    def __eq__(self, other):
        return (isinstance(other, Dataset) and self.space == other.space
                and self.samples == other.samples)

    def __repr__(self):
        return f"Dataset(n={self.n}, d={self.space.dimension})"


def _parse_label(token, line):
    if token in ("+1", "1"):
        return MALWARE
    if token == "-1":
        return BENIGN
    raise ParseError(f"bad label {token!r}", line=line)


def parse_dataset(path, space=None):
    """Read a dataset file.

    With a space given, unknown (well-formed) feature tokens are dropped
    silently and duplicates collapse. Without one, a fresh space is built from
    the union of observed tokens, ordered by sorted token string.
    """
    raw = []  # (label, [token, ...]) per sample line
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            label = _parse_label(parts[0], lineno)
            tokens = []
            for tok in parts[1:]:
                _split_token(tok, line=lineno)  # validate grammar up front
                tokens.append(tok)
            raw.append((label, tokens))
    if not raw:
        raise DatasetError(f"{path}: no samples")
    if space is None:
        universe = sorted({t for _, tokens in raw for t in tokens})
        space = FeatureSpace.from_tokens(universe)
    samples = []
    for label, tokens in raw:
        ids = [space.index_of(t) for t in tokens]
        active = np.unique(np.array([i for i in ids if i is not None], dtype=np.int64))
        samples.append(SampleVector(active, label))
    return Dataset(space, samples)


def write_dataset(data, path):
    """Write the canonical text form (sorted features, +1/-1 labels)."""
    tokens = data.space.tokens()
    with open(path, "w", encoding="utf-8") as fh:
        for s in data.samples:
            label = "+1" if s.label == MALWARE else "-1"
            feats = " ".join(tokens[i] for i in s.active)
            fh.write(f"{label} {feats}".rstrip() + "\n")


def class_conditional_frequency(data, label):
    """Fraction of samples with the given label that have each feature active."""
    rows = np.flatnonzero(data.labels == label)
    if len(rows) == 0:
        raise DatasetError(f"no samples with label {label:+d}")
    indices, indptr = data.matrix()
    sub_indices, _ = csr.take_rows(indices, indptr, rows)
    counts = np.bincount(sub_indices, minlength=data.space.dimension)
    return counts / len(rows)


def discriminability(data):
    """|p(x_k=1 | malware) - p(x_k=1 | benign)| per feature."""
    return np.abs(class_conditional_frequency(data, MALWARE)
                  - class_conditional_frequency(data, BENIGN))


def _reindex(data, keep):
    """New (space, dataset) containing the old feature ids in `keep`'s order."""
    old_space = data.space
    descs = []
    for new_idx, old_idx in enumerate(keep):
        od = old_space.descriptors[old_idx]
        descs.append(FeatureDescriptor(new_idx, od.set_tag, od.name, od.removable))
    new_space = FeatureSpace(descs)
    new_index_of = np.full(old_space.dimension, -1, dtype=np.int64)
    new_index_of[np.asarray(keep, dtype=np.int64)] = np.arange(len(keep), dtype=np.int64)
    indices, indptr = data.matrix()
    new_indices, new_indptr = csr.remap_columns(indices, indptr, new_index_of)
    samples = [
        SampleVector(new_indices[new_indptr[i]:new_indptr[i + 1]], s.label)
        for i, s in enumerate(data.samples)
    ]
    return new_space, Dataset(new_space, samples)


def select_features(data, d_prime):
    """Keep the d_prime most class-discriminative features.

    Ranking is by |p(x_k=1|+1) - p(x_k=1|-1)| descending, ties by ascending
    original index; the reduced space lists features in rank order. Asking for
    more features than exist keeps all of them (with a warning).
    """
    if d_prime < 1:
        raise ValueError(f"d_prime must be >= 1, got {d_prime}")
    d = data.space.dimension
    scores = discriminability(data)
    order = np.lexsort((np.arange(d), -scores))
    if d_prime >= d:
        if d_prime > d:
            warnings.warn(f"d_prime={d_prime} exceeds dimension {d}; keeping all features")
        keep = order
    else:
        keep = order[:d_prime]
    return _reindex(data, keep)


def restrict_to_tags(data, tags):
    """Keep only features whose set tag is in `tags`, preserving order."""
    tags = set(tags)
    keep = [d.index for d in data.space.descriptors if d.set_tag in tags]
    if not keep:
        raise DatasetError(f"no features with tags {sorted(tags)}")
    return _reindex(data, keep)


def project_to_space(data, space):
    """Re-express samples in another space, matching features by token."""
    mapping = np.full(data.space.dimension, -1, dtype=np.int64)
    for desc in data.space.descriptors:
        target = space.index_of(desc.token)
        if target is not None:
            mapping[desc.index] = target
    indices, indptr = data.matrix()
    new_indices, new_indptr = csr.remap_columns(indices, indptr, mapping)
    samples = [
        SampleVector(new_indices[new_indptr[i]:new_indptr[i + 1]], s.label)
        for i, s in enumerate(data.samples)
    ]
    return Dataset(space, samples)


def split(data, fractions, seed):
    """Random (train, surrogate, test) partition.

    fractions = (train, surrogate, test), each >= 0, summing to <= 1; every
    sample not drawn into train or surrogate lands in test.
    """
    if len(fractions) != 3:
        raise ValueError("fractions must be (train, surrogate, test)")
    f = [float(x) for x in fractions]
    if min(f) < 0 or sum(f) > 1 + 1e-9:
        raise ValueError(f"fractions must be non-negative and sum to <= 1, got {f}")
    n = data.n
    rng = np.random.Generator(np.random.PCG64(seed))
    perm = rng.permutation(n)
    n_train = int(round(f[0] * n))
    n_surr = min(int(round(f[1] * n)), n - n_train)
    train = data.subset(perm[:n_train])
    surrogate = data.subset(perm[n_train:n_train + n_surr])
    test = data.subset(perm[n_train + n_surr:])
    return train, surrogate, test
