"""Adversary-aware linear classification on sparse binary feature spaces.

Train hinge-loss linear classifiers whose weights live inside a box, so
that no single feature can dominate the decision, and measure how fast
detection degrades when malware authors flip features to evade them.
"""

__version__ = "0.1.0"

from .errors import DatasetError, DivergenceError, ParseError
from .features import (BENIGN, DEXCODE_TAGS, MALWARE, MANIFEST_TAGS, SET_TAGS,
                       Dataset, FeatureDescriptor, FeatureSpace, SampleVector,
                       class_conditional_frequency, discriminability,
                       parse_dataset, project_to_space, removable_for_tag,
                       restrict_to_tags, select_features, split, write_dataset)
from .model import (LinearModel, WeightProfile, classify, decision_function,
                    decision_scores, l1_normalize, load_model, save_model,
                    sensitivity, weight_profile)
from .training import (BoundsSpec, DecaySchedule, TrainConfig, TrainReport,
                       objective, project_box, secure_cross_validate,
                       subgradient, train)
from .attacks import (ADDITION_AND_REMOVAL, ADDITION_ONLY, KNOWLEDGE_LEVELS,
                      LIMITED, MIMICRY, PERFECT, POLICIES, ZERO_EFFORT,
                      AttackSpec, AttackerWeights, attack_dataset,
                      brute_force_evade, derive_attacker_weights,
                      evade_dataset, evade_sample,
                      expected_modification_probability,
                      modification_probability, top_modified_features)
from .ensemble import EnsembleConfig, train_mcs, train_mcs_detailed
from .evaluation import (RocCurve, SecurityCurve, dr_at_fpr,
                         frequency_profile, roc, security_curve,
                         security_score, tradeoff_score)
from .synth import generate

__all__ = [
    "__version__",
    "DatasetError", "DivergenceError", "ParseError",
    "BENIGN", "MALWARE", "MANIFEST_TAGS", "DEXCODE_TAGS", "SET_TAGS",
    "Dataset", "FeatureDescriptor", "FeatureSpace", "SampleVector",
    "class_conditional_frequency", "discriminability", "parse_dataset",
    "project_to_space", "removable_for_tag", "restrict_to_tags",
    "select_features", "split", "write_dataset",
    "LinearModel", "WeightProfile", "classify", "decision_function",
    "decision_scores", "l1_normalize", "load_model", "save_model",
    "sensitivity", "weight_profile",
    "BoundsSpec", "DecaySchedule", "TrainConfig", "TrainReport",
    "objective", "project_box", "secure_cross_validate", "subgradient", "train",
    "ZERO_EFFORT", "MIMICRY", "LIMITED", "PERFECT", "KNOWLEDGE_LEVELS",
    "ADDITION_ONLY", "ADDITION_AND_REMOVAL", "POLICIES",
    "AttackSpec", "AttackerWeights", "attack_dataset", "brute_force_evade",
    "derive_attacker_weights", "evade_dataset", "evade_sample",
    "expected_modification_probability", "modification_probability",
    "top_modified_features",
    "EnsembleConfig", "train_mcs", "train_mcs_detailed",
    "RocCurve", "SecurityCurve", "dr_at_fpr", "frequency_profile", "roc",
    "security_curve", "security_score", "tradeoff_score",
    "generate",
]
