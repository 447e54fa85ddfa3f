"""Evasion attacks: greedy sparse feature manipulation under a budget.

The attacker ranks features by the absolute value of an estimated weight
vector w_hat (ties by ascending feature index) and walks that ranking,
removing active features with positive estimated weight (only where the
feature is removable and the policy allows removal) and adding inactive
features with negative estimated weight, until `budget` features have been
modified. Zero-weight features are never touched.

w_hat depends on the attacker's knowledge:
  perfect      the target model's own weights
  limited      a surrogate model's weights
  mimicry      class-conditional frequency differences on surrogate data
  zero_effort  all zeros (no modification; the baseline)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import backends
from .errors import DatasetError
from .features import MALWARE, Dataset, SampleVector, class_conditional_frequency

ZERO_EFFORT = "zero_effort"
MIMICRY = "mimicry"
LIMITED = "limited"
PERFECT = "perfect"
KNOWLEDGE_LEVELS = (ZERO_EFFORT, MIMICRY, LIMITED, PERFECT)

ADDITION_ONLY = "addition_only"
ADDITION_AND_REMOVAL = "addition_and_removal"
POLICIES = (ADDITION_ONLY, ADDITION_AND_REMOVAL)

SOURCES = ("true_model", "surrogate_model", "frequency_difference", "zero_effort")


@dataclass(frozen=True)
class AttackSpec:
    knowledge: str
    policy: str
    budget: int

    def __post_init__(self):
        if self.knowledge not in KNOWLEDGE_LEVELS:
            raise ValueError(f"unknown knowledge level {self.knowledge!r}")
        if self.policy not in POLICIES:
            raise ValueError(f"unknown policy {self.policy!r}")
        if self.budget < 0:
            raise ValueError("budget must be >= 0")


@dataclass(frozen=True)
class AttackerWeights:
    w_hat: np.ndarray
    source: str

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown weight source {self.source!r}")
        self.w_hat.flags.writeable = False


def derive_attacker_weights(spec, target, surrogate=None, surrogate_data=None):
    """Build w_hat for the requested knowledge level."""
    d = target.dimension
    if spec.knowledge == PERFECT:
        return AttackerWeights(target.w.copy(), "true_model")
    if spec.knowledge == LIMITED:
        if surrogate is None:
            raise DatasetError("limited knowledge requires a surrogate model")
        if surrogate.dimension != d:
            raise DatasetError("surrogate model dimension does not match target")
        return AttackerWeights(surrogate.w.copy(), "surrogate_model")
    if spec.knowledge == MIMICRY:
        if surrogate_data is None:
            raise DatasetError("mimicry requires surrogate data")
        if surrogate_data.space.dimension != d:
            raise DatasetError("surrogate data dimension does not match target")
        w_hat = (class_conditional_frequency(surrogate_data, MALWARE)
                 - class_conditional_frequency(surrogate_data, -1))
        return AttackerWeights(w_hat, "frequency_difference")
    return AttackerWeights(np.zeros(d, dtype=np.float64), "zero_effort")


def _plan(weights, policy, space):
    """(order, can_add, can_remove) shared by every sample of one attack."""
    w_hat = weights.w_hat
    d = len(w_hat)
    can_add = w_hat < 0.0
    can_remove = (w_hat > 0.0) & space.removable if policy == ADDITION_AND_REMOVAL \
        else np.zeros(d, dtype=bool)
    candidates = can_add | can_remove
    order = np.lexsort((np.arange(d), -np.abs(w_hat)))
    return order[candidates[order]], can_add, can_remove


def _apply(data, weights, policy, budget, attack_mask):
    order, can_add, can_remove = _plan(weights, policy, data.space)
    indices, indptr = data.matrix()
    out_indices, out_indptr, flips = backends.evade_rows(
        indices, indptr, attack_mask, order, can_add, can_remove, int(budget))
    samples = [
        SampleVector(out_indices[out_indptr[i]:out_indptr[i + 1]], s.label)
        for i, s in enumerate(data.samples)
    ]
    return Dataset(data.space, samples), flips


def evade_sample(x, weights, policy, budget, space):
    """Greedy attack on one malware sample; returns the modified sample."""
    if x.label != MALWARE:
        raise DatasetError("only malware samples are attacked")
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if len(weights.w_hat) != space.dimension:
        raise DatasetError("attacker weights do not match the feature space")
    single = Dataset(space, [x])
    attacked, _ = _apply(single, weights, policy, budget, np.ones(1, dtype=bool))
    return attacked.samples[0]


def attack_dataset(data, weights, policy, budget):
    """Attack every malware sample; benign rows pass through unchanged.

    Returns (dataset, flips) where flips[i] counts row i's modified features.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if len(weights.w_hat) != data.space.dimension:
        raise DatasetError("attacker weights do not match the feature space")
    return _apply(data, weights, policy, budget, data.labels == MALWARE)


def evade_dataset(data, spec, target, surrogate=None, surrogate_data=None):
    """Derive attacker weights per spec and attack the dataset's malware."""
    if target.dimension != data.space.dimension:
        raise DatasetError("target model does not match the dataset's space")
    weights = derive_attacker_weights(spec, target, surrogate, surrogate_data)
    attacked, _ = attack_dataset(data, weights, spec.policy, spec.budget)
    return attacked


BRUTE_FORCE_MAX_DIMENSION = 20


def brute_force_evade(x, weights, policy, budget, space):
    """Exhaustive minimizer of w_hat·x' over feasible manipulations.

    Feasible: any inactive feature may be added; an active feature may be
    removed only if removable and the policy allows removal; at most `budget`
    flips. Ties pick the lexicographically smallest active set. Guarded to
    dimensions <= 20.
    """
    d = space.dimension
    if d > BRUTE_FORCE_MAX_DIMENSION:
        raise ValueError(f"brute force is limited to d <= {BRUTE_FORCE_MAX_DIMENSION}")
    if x.label != MALWARE:
        raise DatasetError("only malware samples are attacked")
    if len(weights.w_hat) != d:
        raise DatasetError("attacker weights do not match the feature space")
    w_hat = weights.w_hat
    active = set(int(i) for i in x.active)
    removal_ok = policy == ADDITION_AND_REMOVAL
    feasible = [k for k in range(d)
                if (k not in active) or (removal_ok and space.removable[k])]
    best_obj = None
    best_set = None
    for size in range(0, min(budget, len(feasible)) + 1):
        for combo in itertools.combinations(feasible, size):
            new_active = set(active)
            for k in combo:
                if k in new_active:
                    new_active.remove(k)
                else:
                    new_active.add(k)
            key = tuple(sorted(new_active))
            obj = float(sum(w_hat[k] for k in key))
            if best_obj is None or obj < best_obj or (obj == best_obj and key < best_set):
                best_obj = obj
                best_set = key
    return SampleVector(np.array(best_set, dtype=np.int64), MALWARE)


def modification_probability(p, removable, weight_sign):
    """q: probability the attacker flips a feature with malware frequency p.

    Removal case (active, removable, positive weight): q = p. Addition case
    (negative weight): q = 1 - p. Otherwise the feature is never touched.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if weight_sign > 0 and removable:
        return float(p)
    if weight_sign < 0:
        return 1.0 - float(p)
    return 0.0


def expected_modification_probability(q, rank, d):
    """q': q discounted by rank under a budget uniform on 1..d.

    rank is 0-based in the |w_hat|-descending ordering; a feature at rank r is
    reached only when the budget exceeds r, which happens with probability
    (d - r) / d.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    if d < 1 or not 0 <= rank < d:
        raise ValueError("rank must lie in [0, d)")
    return float(q) * (d - rank) / d


def top_modified_features(data, weights, policy, top_n):
    """Rank features by expected modification probability q'.

    Rows carry the feature token, q, q', and relevance |w_k| / ||w||_1; rows
    with q' = 0 are dropped, so all-zero weights yield an empty table.
    """
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    space = data.space
    w_hat = weights.w_hat
    if len(w_hat) != space.dimension:
        raise DatasetError("attacker weights do not match the dataset's space")
    d = space.dimension
    p_mal = class_conditional_frequency(data, MALWARE)
    l1 = float(np.abs(w_hat).sum())
    order = np.lexsort((np.arange(d), -np.abs(w_hat)))
    rank = np.empty(d, dtype=np.int64)
    rank[order] = np.arange(d)
    removal_ok = policy == ADDITION_AND_REMOVAL
    rows = []
    for k in range(d):
        q = modification_probability(
            float(p_mal[k]), removal_ok and bool(space.removable[k]), float(np.sign(w_hat[k])))
        qp = expected_modification_probability(q, int(rank[k]), d)
        if qp > 0.0:
            rows.append({
                "feature": space.descriptors[k].token,
                "q": q,
                "q_prime": qp,
                "relevance": abs(float(w_hat[k])) / l1 if l1 > 0 else 0.0,
                "index": k,
            })
    rows.sort(key=lambda r: (-r["q_prime"], r["index"]))
    return rows[:top_n]
