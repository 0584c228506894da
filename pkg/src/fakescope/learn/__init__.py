"""Trainable classifiers, pruning, cross-validation, and sweeps."""

from .cv import (
    CvReport,
    SweepEntry,
    SweepReport,
    class_distribution_sweep,
    cross_validate,
    cross_validate_matrix,
)
from .model import (
    ALGORITHMS,
    Prediction,
    TrainedModel,
    model_from_json,
    model_to_json,
    model_tree_stats,
    predict,
    predict_many,
    predict_scores,
    prune,
    train,
)
from .tree import (
    LearnError,
    TreeNode,
    TreeStats,
    grow_tree,
    pessimistic_prune,
    reduced_error_prune,
    tree_predict_proba,
    tree_stats,
)

__all__ = [
    "ALGORITHMS",
    "CvReport",
    "LearnError",
    "Prediction",
    "SweepEntry",
    "SweepReport",
    "TrainedModel",
    "TreeNode",
    "TreeStats",
    "class_distribution_sweep",
    "cross_validate",
    "cross_validate_matrix",
    "grow_tree",
    "model_from_json",
    "model_to_json",
    "model_tree_stats",
    "pessimistic_prune",
    "predict",
    "predict_many",
    "predict_scores",
    "prune",
    "reduced_error_prune",
    "train",
    "tree_predict_proba",
    "tree_stats",
]
