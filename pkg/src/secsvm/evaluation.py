"""ROC construction, detection-rate lookups, and security curves.

Conventions: a sample is flagged malware when f(x) >= threshold. The ROC is
swept over every distinct score (plus +inf), so the detection rate at a
false-positive-rate budget is read off as a step function: the TPR of the
last curve point whose FPR does not exceed the target, with no interpolation.
A security curve fixes the clean operating threshold at that point and holds
it while the test malware is attacked at growing budgets.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import attacks
from .errors import DatasetError
from .features import MALWARE, BENIGN, SET_TAGS
from .model import decision_scores


@dataclass(frozen=True)
class RocCurve:
    fpr: np.ndarray
    tpr: np.ndarray
    thresholds: np.ndarray


@dataclass(frozen=True)
class SecurityCurve:
    budgets: np.ndarray
    dr: np.ndarray
    target_fpr: float


def _roc_from_scores(scores, labels):
    pos = labels == MALWARE
    neg = labels == BENIGN
    n_pos = int(pos.sum())
    n_neg = int(neg.sum())
    if n_pos == 0 or n_neg == 0:
        raise DatasetError("ROC needs both classes present")
    order = np.argsort(-scores, kind="stable")
    s = scores[order]
    tp = np.cumsum(pos[order])
    fp = np.cumsum(neg[order])
    # keep the last row of each tied-score block: that is the point realized
    # by thresholding at this score value
    last = np.ones(len(s), dtype=bool)
    last[:-1] = s[1:] != s[:-1]
    fpr = np.concatenate(([0.0], fp[last] / n_neg))
    tpr = np.concatenate(([0.0], tp[last] / n_pos))
    thresholds = np.concatenate(([np.inf], s[last]))
    return RocCurve(fpr, tpr, thresholds)


def roc(model, data):
    """Full ROC of the model on a two-class dataset."""
    return _roc_from_scores(decision_scores(model, data), data.labels)


def _operating_point(curve, target_fpr):
    if not 0.0 < target_fpr < 1.0:
        raise ValueError("target FPR must lie in (0, 1)")
    idx = int(np.searchsorted(curve.fpr, target_fpr, side="right")) - 1
    return idx


def dr_at_fpr(curve, target_fpr):
    """TPR at the largest achieved FPR <= target (step function)."""
    return float(curve.tpr[_operating_point(curve, target_fpr)])


def security_curve(model, clean_test, spec, max_budget, *, target_fpr=0.01,
                   surrogate=None, surrogate_data=None):
    """Detection rate at a fixed clean threshold versus attack budget.

    The threshold comes from the clean ROC at target_fpr and is reused for
    every budget; attacker weights are derived once from `spec` and only the
    budget varies. Budget 0 is the clean detection rate.
    """
    if max_budget < 1:
        raise ValueError("max_budget must be >= 1")
    curve = roc(model, clean_test)
    threshold = float(curve.thresholds[_operating_point(curve, target_fpr)])
    weights = attacks.derive_attacker_weights(spec, model, surrogate, surrogate_data)
    mal_rows = np.flatnonzero(clean_test.labels == MALWARE)
    malware = clean_test.subset(mal_rows)
    budgets = np.arange(max_budget + 1, dtype=np.int64)
    dr = np.empty(max_budget + 1, dtype=np.float64)
    dr[0] = float(np.mean(decision_scores(model, malware) >= threshold))
    for m in budgets[1:]:
        attacked, _ = attacks.attack_dataset(malware, weights, spec.policy, int(m))
        dr[m] = float(np.mean(decision_scores(model, attacked) >= threshold))
    return SecurityCurve(budgets, dr, float(target_fpr))


def security_score(curve):
    """Mean detection rate over attacked budgets (m >= 1)."""
    attacked = curve.dr[curve.budgets >= 1]
    if len(attacked) == 0:
        raise ValueError("curve has no attacked budgets")
    return float(np.mean(attacked))


def tradeoff_score(accuracy, security, lam):
    """r = A + lambda * S, the bound-selection criterion."""
    return float(accuracy) + float(lam) * float(security)


def frequency_profile(data, group_by="set_tag"):
    """Mean active fraction per feature set, over samples and features.

    Returns {tag: fraction}; a tag with no features in the space, or an empty
    dataset, yields NaN for that row.
    """
    if group_by != "set_tag":
        raise ValueError(f"unsupported grouping {group_by!r}")
    tags = np.array([d.set_tag for d in data.space.descriptors])
    indices, _ = data.matrix()
    active_per_feature = np.bincount(indices, minlength=data.space.dimension) \
        if len(indices) else np.zeros(data.space.dimension, dtype=np.int64)
    out = {}
    for tag in SET_TAGS:
        members = tags == tag
        cells = int(members.sum()) * data.n
        out[tag] = float(active_per_feature[members].sum()) / cells if cells else float("nan")
    return out
