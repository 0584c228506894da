"""Bagged random forest and adaptive boosting over the entropy tree."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..seeding import make_rng
from .tree import LearnError, TreeNode, grow_tree, tree_predict_proba


@dataclass
class ForestState:
    trees: list[TreeNode]
    mtry: int


def rf_fit(
    X: np.ndarray,
    y: np.ndarray,
    seed: int,
    n_trees: int = 64,
    min_leaf: int = 2,
    max_depth: int | None = None,
    feature_sample: str = "sqrt",
) -> ForestState:
    """Bootstrap each tree; per split, draw ceil(sqrt(d)) candidate features."""
    if n_trees < 1:
        raise LearnError("n_trees must be positive")
    if feature_sample not in ("sqrt", "all"):
        raise LearnError(f"unknown feature_sample {feature_sample!r}")
    n, d = X.shape
    mtry = d if feature_sample == "all" else max(1, math.ceil(math.sqrt(d)))
    trees = []
    for t in range(n_trees):
        rng = make_rng(seed, 7, t)
        idx = rng.integers(0, n, size=n)
        trees.append(
            grow_tree(
                X[idx],
                y[idx],
                min_leaf=min_leaf,
                max_depth=max_depth,
                rng=rng,
                mtry=mtry,
            )
        )
    return ForestState(trees=trees, mtry=mtry)


def rf_scores(state: ForestState, X: np.ndarray) -> np.ndarray:
    total = np.zeros(X.shape[0])
    for tree in state.trees:
        total += tree_predict_proba(tree, X)
    return total / len(state.trees)


@dataclass
class BoostState:
    alphas: list[float]
    trees: list[TreeNode]


def ab_fit(
    X: np.ndarray,
    y: np.ndarray,
    rounds: int = 50,
    depth: int = 1,
    min_leaf: int = 2,
) -> BoostState:
    """Standard exponential-loss boosting of depth-capped trees."""
    if rounds < 1:
        raise LearnError("rounds must be positive")
    if not 1 <= depth <= 3:
        raise LearnError("base-tree depth must be 1..3")
    n = X.shape[0]
    w = np.full(n, 1.0 / n)
    alphas: list[float] = []
    trees: list[TreeNode] = []
    for t in range(rounds):
        tree = grow_tree(X, y, weights=w, min_leaf=min_leaf, max_depth=depth)
        pred = (tree_predict_proba(tree, X) >= 0.5).astype(np.float64)
        miss = pred != y
        err = float(w[miss].sum())
        err = min(max(err, 1e-10), 1.0 - 1e-10)
        if err >= 0.5 and trees:
            break
        alpha = 0.5 * math.log((1.0 - err) / err)
        alphas.append(alpha)
        trees.append(tree)
        w = w * np.exp(np.where(miss, alpha, -alpha))
        w = w / w.sum()
    return BoostState(alphas=alphas, trees=trees)


def ab_scores(state: BoostState, X: np.ndarray) -> np.ndarray:
    """Normalized ensemble margin mapped to [0, 1]."""
    total_alpha = sum(state.alphas)
    if total_alpha <= 0:
        return np.full(X.shape[0], 0.5)
    margin = np.zeros(X.shape[0])
    for alpha, tree in zip(state.alphas, state.trees):
        h = np.where(tree_predict_proba(tree, X) >= 0.5, 1.0, -1.0)
        margin += alpha * h
    return (margin / total_alpha + 1.0) / 2.0
