"""Leave-one-feature-out sensitivity analysis fused across classifiers.

For each classifier the local sensitivity of a feature is the ratio of the
model's test MCC without that feature to its full-feature MCC. Classifier
weights are proportional to full-model MCC. Feature importance aggregates
the inverse ratios (floored at one, so a removal that happens to help
cannot score a feature below "no effect") and is normalized so the top
feature scores exactly 1. Ties break by the total prediction churn the
removal caused; a feature whose removal provably changes nothing ranks
last.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .corpus.model import LabeledDataset
from .features.catalog import CLASS_A_SPECS, FeatureSpec
from .features.extract import FeatureMatrix, extract
from .learn.model import predict_many, train
from .metrics import ConfusionMatrix, mcc
from .seeding import derive_seed

EPSILON = 1e-6

DEFAULT_ALGORITHMS = ("dt", "rf", "ab", "knn", "nb", "lr")


class SensitivityError(ValueError):
    pass


def local_sensitivity(mcc_full: float, mcc_without: float) -> float:
    """Performance ratio of the reduced model; negatives clamp to zero."""
    if mcc_full <= 0:
        raise SensitivityError("full-model MCC must be positive")
    return max(0.0, mcc_without) / mcc_full


@dataclass(frozen=True)
class SensitivityCell:
    algorithm: str
    feature: str
    mcc_full: float
    mcc_without: float
    local: float
    changed_predictions: int


@dataclass(frozen=True)
class FeatureScore:
    feature: str
    global_sensitivity: float  # weighted sum of local sensitivities
    raw_importance: float
    normalized_importance: float
    perturbation: float
    rank: int


@dataclass
class SensitivityReport:
    cells: tuple[SensitivityCell, ...]
    scores: tuple[FeatureScore, ...]  # rank order
    weights: dict[str, float]
    full_mcc: dict[str, float]
    excluded: tuple[str, ...]
    seed: int

    def score_for(self, feature: str) -> FeatureScore:
        for score in self.scores:
            if score.feature == feature:
                return score
        raise KeyError(feature)

    def ranking(self) -> tuple[str, ...]:
        return tuple(score.feature for score in self.scores)

    def as_rows(self) -> list[dict[str, object]]:
        rows = []
        locals_by_feature: dict[str, dict[str, float]] = {}
        for cell in self.cells:
            locals_by_feature.setdefault(cell.feature, {})[cell.algorithm] = cell.local
        for score in self.scores:
            row: dict[str, object] = {
                "rank": score.rank,
                "feature": score.feature,
                "normalized_importance": score.normalized_importance,
                "raw_importance": score.raw_importance,
                "global_sensitivity": score.global_sensitivity,
            }
            for algorithm, value in sorted(locals_by_feature.get(score.feature, {}).items()):
                row[f"local_{algorithm}"] = value
            rows.append(row)
        return rows


def _evaluate(model, X: np.ndarray, y: np.ndarray) -> tuple[float, np.ndarray]:
    _, scores = predict_many(model, X)
    predicted = (scores >= 0.5).astype(np.float64)
    return mcc(ConfusionMatrix.from_predictions(y, predicted)), predicted


def analyze_matrices(
    train_matrix: FeatureMatrix,
    test_matrix: FeatureMatrix,
    algorithms: Sequence[str] = DEFAULT_ALGORITHMS,
    seed: int = 0,
    params: Optional[dict] = None,
    jobs: int = 1,
) -> SensitivityReport:
    """The full leave-one-out grid over pre-extracted train/test matrices."""
    if train_matrix.feature_names != test_matrix.feature_names:
        raise SensitivityError("train/test matrices disagree on features")
    if set(train_matrix.account_ids) & set(test_matrix.account_ids):
        raise SensitivityError("train and test sets must be disjoint")
    features = train_matrix.feature_names
    if not features:
        raise SensitivityError("no features to analyze")
    params = params or {}
    y_test = test_matrix.y01()

    def fit_cell(algorithm: str, dropped: Optional[str]):
        tr = train_matrix if dropped is None else train_matrix.drop_feature(dropped)
        te = test_matrix if dropped is None else test_matrix.drop_feature(dropped)
        model = train(
            algorithm,
            tr,
            params=params.get(algorithm),
            seed=derive_seed(seed, 31, _algo_id(algorithm), _feature_id(features, dropped)),
        )
        score, predicted = _evaluate(model, te.values, y_test)
        return score, predicted

    def _algo_id(algorithm: str) -> int:
        return DEFAULT_ALGORITHMS.index(algorithm)

    def _feature_id(names, dropped) -> int:
        return 0 if dropped is None else names.index(dropped) + 1

    full_mcc: dict[str, float] = {}
    full_pred: dict[str, np.ndarray] = {}
    excluded: list[str] = []
    kept: list[str] = []
    for algorithm in algorithms:
        score, predicted = fit_cell(algorithm, None)
        if score <= 0:
            warnings.warn(
                f"{algorithm}: full-model MCC {score:.3f} <= 0, excluded from fusion",
                stacklevel=2,
            )
            excluded.append(algorithm)
            continue
        full_mcc[algorithm] = score
        full_pred[algorithm] = predicted
        kept.append(algorithm)
    if not kept:
        raise SensitivityError("every classifier scored MCC <= 0 on the test set")
    weight_total = sum(full_mcc.values())
    weights = {a: full_mcc[a] / weight_total for a in kept}

    grid = [(algorithm, feature) for algorithm in kept for feature in features]

    def run_cell(cell):
        algorithm, feature = cell
        score, predicted = fit_cell(algorithm, feature)
        changed = int(np.sum(predicted != full_pred[algorithm]))
        return SensitivityCell(
            algorithm=algorithm,
            feature=feature,
            mcc_full=full_mcc[algorithm],
            mcc_without=score,
            local=local_sensitivity(full_mcc[algorithm], score),
            changed_predictions=changed,
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(run_cell, grid))
    else:
        cells = [run_cell(cell) for cell in grid]

    by_feature: dict[str, list[SensitivityCell]] = {f: [] for f in features}
    for cell in cells:
        by_feature[cell.feature].append(cell)

    raw_scores: dict[str, float] = {}
    global_sens: dict[str, float] = {}
    perturbation: dict[str, float] = {}
    for feature in features:
        raw = 0.0
        sens = 0.0
        churn = 0.0
        for cell in by_feature[feature]:
            w = weights[cell.algorithm]
            damage_ratio = cell.mcc_full / max(max(0.0, cell.mcc_without), EPSILON)
            raw += w * max(1.0, damage_ratio)
            sens += w * cell.local
            churn += w * cell.changed_predictions
        raw_scores[feature] = raw
        global_sens[feature] = sens
        perturbation[feature] = churn
    top = max(raw_scores.values())
    order = sorted(
        features,
        key=lambda f: (-raw_scores[f], -perturbation[f], features.index(f)),
    )
    scores = tuple(
        FeatureScore(
            feature=f,
            global_sensitivity=global_sens[f],
            raw_importance=raw_scores[f],
            normalized_importance=raw_scores[f] / top,
            perturbation=perturbation[f],
            rank=i + 1,
        )
        for i, f in enumerate(order)
    )
    return SensitivityReport(
        cells=tuple(cells),
        scores=scores,
        weights=weights,
        full_mcc=full_mcc,
        excluded=tuple(excluded),
        seed=seed,
    )


def analyze(
    train_set: LabeledDataset,
    test_set: LabeledDataset,
    algorithms: Sequence[str] = DEFAULT_ALGORITHMS,
    specs: Sequence[FeatureSpec] = CLASS_A_SPECS,
    seed: int = 0,
    params: Optional[dict] = None,
    jobs: int = 1,
) -> SensitivityReport:
    """Extract both corpora once, then run the leave-one-out grid."""
    train_matrix = extract(train_set, specs)
    test_matrix = extract(test_set, specs)
    return analyze_matrices(
        train_matrix, test_matrix, algorithms=algorithms, seed=seed, params=params, jobs=jobs
    )
