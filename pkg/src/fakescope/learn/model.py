"""Training/prediction facade over the six classifiers, plus serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..features.catalog import BOOLEAN
from ..features.extract import FeatureMatrix
from .ensembles import BoostState, ForestState, ab_fit, ab_scores, rf_fit, rf_scores
from .simple import (
    KnnState,
    LogisticState,
    NaiveBayesState,
    knn_fit,
    knn_scores,
    lr_fit,
    lr_scores,
    nb_fit,
    nb_scores,
)
from .tree import (
    LearnError,
    TreeNode,
    grow_tree,
    pessimistic_prune,
    reduced_error_prune,
    tree_predict_proba,
    tree_stats,
)

ALGORITHMS = ("dt", "rf", "ab", "knn", "nb", "lr")

MODEL_FORMAT_VERSION = 1


@dataclass
class TreeState:
    root: TreeNode
    X: np.ndarray  # retained training sample, for reduced-error pruning
    y: np.ndarray


@dataclass
class TrainedModel:
    algorithm: str
    params: dict
    feature_names: tuple[str, ...]
    feature_kinds: tuple[str, ...]
    seed: int
    state: object

    @property
    def n_features(self) -> int:
        return len(self.feature_names)


@dataclass(frozen=True)
class Prediction:
    label: str
    score: float


def _check_matrix(matrix: FeatureMatrix) -> tuple[np.ndarray, np.ndarray]:
    X = matrix.values
    if not np.all(np.isfinite(X)):
        raise LearnError("training matrix contains non-finite values")
    y = matrix.y01()
    if y.sum() == 0 or y.sum() == len(y):
        raise LearnError("training data must contain both classes")
    return X, y


def train(
    algorithm: str,
    matrix: FeatureMatrix,
    params: Optional[dict] = None,
    seed: int = 0,
) -> TrainedModel:
    algorithm = algorithm.lower()
    if algorithm not in ALGORITHMS:
        raise LearnError(f"unknown algorithm {algorithm!r}")
    params = dict(params or {})
    X, y = _check_matrix(matrix)

    if algorithm == "dt":
        root = grow_tree(
            X,
            y,
            min_leaf=params.get("min_leaf", 2),
            max_depth=params.get("max_depth"),
        )
        prune_spec = params.get("prune")
        state = TreeState(root=root, X=X, y=y)
        if prune_spec is not None:
            model = TrainedModel(algorithm, params, matrix.feature_names,
                                 tuple(s.kind for s in matrix.specs), seed, state)
            return prune(model, prune_spec, seed=seed)
    elif algorithm == "rf":
        state = rf_fit(
            X,
            y,
            seed=seed,
            n_trees=params.get("n_trees", 64),
            min_leaf=params.get("min_leaf", 2),
            max_depth=params.get("max_depth"),
            feature_sample=params.get("feature_sample", "sqrt"),
        )
    elif algorithm == "ab":
        state = ab_fit(
            X,
            y,
            rounds=params.get("rounds", 50),
            depth=params.get("depth", 1),
            min_leaf=params.get("min_leaf", 2),
        )
    elif algorithm == "knn":
        state = knn_fit(X, y, k=params.get("k", 5))
    elif algorithm == "nb":
        boolean_mask = np.asarray([s.kind == BOOLEAN for s in matrix.specs])
        state = nb_fit(X, y, boolean_mask=boolean_mask)
    else:  # lr
        state = lr_fit(
            X,
            y,
            ridge=params.get("ridge", 1e-3),
            max_iter=params.get("max_iter", 10_000),
            tol=params.get("tol", 1e-6),
        )
    return TrainedModel(
        algorithm=algorithm,
        params=params,
        feature_names=matrix.feature_names,
        feature_kinds=tuple(s.kind for s in matrix.specs),
        seed=seed,
        state=state,
    )


def predict_scores(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise LearnError(
            f"expected {model.n_features} features, got shape {X.shape}"
        )
    state = model.state
    if model.algorithm == "dt":
        return tree_predict_proba(state.root, X)
    if model.algorithm == "rf":
        return rf_scores(state, X)
    if model.algorithm == "ab":
        return ab_scores(state, X)
    if model.algorithm == "knn":
        return knn_scores(state, X)
    if model.algorithm == "nb":
        return nb_scores(state, X)
    return lr_scores(state, X)


def predict_many(model: TrainedModel, X: np.ndarray) -> tuple[list[str], np.ndarray]:
    scores = predict_scores(model, X)
    labels = ["fake" if s >= 0.5 else "human" for s in scores]
    return labels, scores


def predict(model: TrainedModel, vector: Sequence[float]) -> Prediction:
    row = np.asarray(vector, dtype=np.float64)
    if row.ndim != 1 or row.shape[0] != model.n_features:
        raise LearnError(
            f"expected a vector of {model.n_features} features, got shape {row.shape}"
        )
    labels, scores = predict_many(model, row.reshape(1, -1))
    return Prediction(label=labels[0], score=float(scores[0]))


def prune(model: TrainedModel, strategy, seed: int = 0) -> TrainedModel:
    """Prune a trained decision tree.

    ``strategy`` is ("reduced_error", folds) or ("subtree_raising",
    confidence); a bare string uses the strategy's default parameter.
    """
    if model.algorithm != "dt":
        raise LearnError("pruning applies to decision trees only")
    if isinstance(strategy, str):
        strategy = (strategy, None)
    name, arg = strategy
    state: TreeState = model.state
    if name == "reduced_error":
        folds = int(arg) if arg is not None else 3
        root = reduced_error_prune(state.root, state.X, state.y, folds=folds, seed=seed)
    elif name == "subtree_raising":
        confidence = float(arg) if arg is not None else 0.25
        root = pessimistic_prune(state.root, confidence=confidence)
    else:
        raise LearnError(f"unknown pruning strategy {name!r}")
    params = dict(model.params)
    params["prune"] = (name, arg)
    return TrainedModel(
        algorithm="dt",
        params=params,
        feature_names=model.feature_names,
        feature_kinds=model.feature_kinds,
        seed=model.seed,
        state=TreeState(root=root, X=state.X, y=state.y),
    )


def model_tree_stats(model: TrainedModel):
    if model.algorithm != "dt":
        raise LearnError("tree statistics apply to decision trees only")
    return tree_stats(model.state.root)


def _state_to_json(model: TrainedModel) -> dict:
    state = model.state
    if model.algorithm == "dt":
        return {"tree": state.root.to_dict()}
    if model.algorithm == "rf":
        return {"mtry": state.mtry, "trees": [t.to_dict() for t in state.trees]}
    if model.algorithm == "ab":
        return {"alphas": state.alphas, "trees": [t.to_dict() for t in state.trees]}
    if model.algorithm == "knn":
        return {
            "k": state.k,
            "mean": state.mean.tolist(),
            "std": state.std.tolist(),
            "X": state.X.tolist(),
            "y": state.y.tolist(),
        }
    if model.algorithm == "nb":
        return {
            "prior_fake": state.prior_fake,
            "is_bernoulli": state.is_bernoulli.astype(int).tolist(),
            "p_fake": state.p_fake.tolist(),
            "p_human": state.p_human.tolist(),
            "mean_fake": state.mean_fake.tolist(),
            "mean_human": state.mean_human.tolist(),
            "var_fake": state.var_fake.tolist(),
            "var_human": state.var_human.tolist(),
        }
    return {
        "mean": state.mean.tolist(),
        "std": state.std.tolist(),
        "weights": state.weights.tolist(),
        "iterations": state.iterations,
    }


def _state_from_json(algorithm: str, data: dict):
    if algorithm == "dt":
        root = TreeNode.from_dict(data["tree"])
        return TreeState(root=root, X=np.zeros((0, 0)), y=np.zeros(0))
    if algorithm == "rf":
        return ForestState(
            trees=[TreeNode.from_dict(t) for t in data["trees"]], mtry=data["mtry"]
        )
    if algorithm == "ab":
        return BoostState(
            alphas=list(data["alphas"]), trees=[TreeNode.from_dict(t) for t in data["trees"]]
        )
    if algorithm == "knn":
        return KnnState(
            k=data["k"],
            mean=np.asarray(data["mean"]),
            std=np.asarray(data["std"]),
            X=np.asarray(data["X"]),
            y=np.asarray(data["y"]),
        )
    if algorithm == "nb":
        return NaiveBayesState(
            prior_fake=data["prior_fake"],
            is_bernoulli=np.asarray(data["is_bernoulli"], dtype=bool),
            p_fake=np.asarray(data["p_fake"]),
            p_human=np.asarray(data["p_human"]),
            mean_fake=np.asarray(data["mean_fake"]),
            mean_human=np.asarray(data["mean_human"]),
            var_fake=np.asarray(data["var_fake"]),
            var_human=np.asarray(data["var_human"]),
        )
    return LogisticState(
        mean=np.asarray(data["mean"]),
        std=np.asarray(data["std"]),
        weights=np.asarray(data["weights"]),
        iterations=data["iterations"],
    )


def _jsonable_params(params: dict) -> dict:
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in params.items()}


def model_to_json(model: TrainedModel) -> str:
    payload = {
        "format_version": MODEL_FORMAT_VERSION,
        "algorithm": model.algorithm,
        "params": _jsonable_params(model.params),
        "feature_names": list(model.feature_names),
        "feature_kinds": list(model.feature_kinds),
        "seed": model.seed,
        "state": _state_to_json(model),
    }
    return json.dumps(payload, sort_keys=True)


def model_from_json(text: str) -> TrainedModel:
    payload = json.loads(text)
    if payload.get("format_version") != MODEL_FORMAT_VERSION:
        raise LearnError(f"unsupported model format {payload.get('format_version')!r}")
    return TrainedModel(
        algorithm=payload["algorithm"],
        params=payload["params"],
        feature_names=tuple(payload["feature_names"]),
        feature_kinds=tuple(payload["feature_kinds"]),
        seed=payload["seed"],
        state=_state_from_json(payload["algorithm"], payload["state"]),
    )
