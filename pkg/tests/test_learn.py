"""Classifier training, prediction, determinism, CV, and the sweep."""

import numpy as np
import pytest

from fakescope.corpus import SynthConfig, synthesize
from fakescope.features import FeatureSpec, extract, specs_by_names
from fakescope.features.catalog import CLASS_A_SPECS, RATIO, YANG_SET
from fakescope.features.extract import FeatureMatrix
from fakescope.learn import (
    LearnError,
    class_distribution_sweep,
    cross_validate,
    model_from_json,
    model_to_json,
    model_tree_stats,
    predict,
    predict_many,
    train,
)
from fakescope.learn.ensembles import ab_fit, ab_scores, BoostState
from fakescope.seeding import derive_seed, make_rng


def make_matrix(X, y, kinds=None, prefix="f"):
    X = np.asarray(X, dtype=np.float64)
    kinds = kinds or [RATIO] * X.shape[1]
    specs = tuple(
        FeatureSpec(name=f"{prefix}{j}", cost_class="A", source_set="CC", kind=kinds[j])
        for j in range(X.shape[1])
    )
    labels = tuple("fake" if v else "human" for v in y)
    ids = tuple(f"u{i:04d}" for i in range(X.shape[0]))
    return FeatureMatrix(
        specs=specs, account_ids=ids, values=X, labels=labels, provenance={}
    )


def simple_matrix():
    X = np.array([[0.0], [0.1], [0.9], [1.0]])
    y = [0, 0, 1, 1]
    return make_matrix(X, y)


class TestTrain:
    def test_dt_single_split_perfect_training(self):
        matrix = simple_matrix()
        model = train("dt", matrix, seed=0)
        stats = model_tree_stats(model)
        assert (stats.nodes, stats.leaves, stats.height) == (3, 2, 2)
        labels, _ = predict_many(model, matrix.values)
        assert labels == ["human", "human", "fake", "fake"]

    def test_rf_deterministic_serialization(self, paper_like_small):
        matrix = extract(paper_like_small, specs_by_names(YANG_SET))
        a = train("rf", matrix, params={"n_trees": 8}, seed=5)
        b = train("rf", matrix, params={"n_trees": 8}, seed=5)
        assert model_to_json(a) == model_to_json(b)
        c = train("rf", matrix, params={"n_trees": 8}, seed=6)
        assert model_to_json(a) != model_to_json(c)

    def test_single_class_rejected(self):
        X = np.array([[0.0], [1.0]])
        matrix = make_matrix(X, [1, 1])
        with pytest.raises(LearnError):
            train("dt", matrix, seed=0)

    def test_non_finite_rejected(self):
        matrix = make_matrix(np.array([[0.0], [np.inf]]), [0, 1])
        with pytest.raises(LearnError):
            train("dt", matrix, seed=0)

    def test_unknown_algorithm(self):
        with pytest.raises(LearnError):
            train("svm", simple_matrix(), seed=0)

    def test_rf_one_tree_full_features_equals_dt_on_bootstrap(self):
        rng_data = make_rng(123)
        X = rng_data.normal(size=(80, 3))
        y = (X[:, 0] + 0.2 * rng_data.normal(size=80) > 0).astype(float)
        matrix = make_matrix(X, y)
        forest = train(
            "rf", matrix, params={"n_trees": 1, "feature_sample": "all"}, seed=9
        )
        boot_rng = make_rng(9, 7, 0)
        idx = boot_rng.integers(0, 80, size=80)
        boot = make_matrix(X[idx], y[idx])
        tree = train("dt", boot, seed=0)
        probe = rng_data.normal(size=(40, 3))
        assert predict_many(forest, probe)[0] == predict_many(tree, probe)[0]

    def test_monotone_transform_invariance(self):
        rng = make_rng(7)
        X = rng.normal(size=(120, 4))
        y = ((X[:, 1] > 0.3) | (X[:, 2] < -1.0)).astype(float)
        probe = rng.normal(size=(50, 4))

        def warp(A):
            B = A.copy()
            B[:, 1] = np.exp(B[:, 1])
            B[:, 2] = B[:, 2] ** 3
            return B

        plain = train("dt", make_matrix(X, y), seed=0)
        warped = train("dt", make_matrix(warp(X), y), seed=0)
        assert predict_many(plain, probe)[0] == predict_many(warped, warp(probe))[0]


class TestPredict:
    def test_dt_score_one_on_pure_leaf(self):
        model = train("dt", simple_matrix(), seed=0)
        result = predict(model, [1.0])
        assert result.label == "fake"
        assert result.score == 1.0

    def test_knn_k1_returns_stored_label(self):
        matrix = simple_matrix()
        model = train("knn", matrix, params={"k": 1}, seed=0)
        assert predict(model, [0.1]).label == "human"
        assert predict(model, [0.9]).label == "fake"

    def test_nb_midpoint_score_half(self):
        matrix = make_matrix(np.array([[0.0], [1.0]]), [0, 1])
        model = train("nb", matrix, seed=0)
        assert predict(model, [0.5]).score == pytest.approx(0.5)

    def test_dimension_mismatch(self):
        model = train("dt", simple_matrix(), seed=0)
        with pytest.raises(LearnError):
            predict(model, [1.0, 2.0])

    def test_serialization_roundtrip_preserves_predictions(self, paper_like_small):
        matrix = extract(paper_like_small, CLASS_A_SPECS)
        for algo in ("dt", "rf", "ab", "knn", "nb", "lr"):
            model = train(
                algo, matrix, params={"n_trees": 4, "rounds": 5} if algo in ("rf", "ab") else None,
                seed=2,
            )
            clone = model_from_json(model_to_json(model))
            probe = matrix.values[:50]
            assert predict_many(model, probe)[0] == predict_many(clone, probe)[0]


class TestBoosting:
    def test_training_error_non_increasing_on_separable_fixture(self):
        rng = make_rng(42)
        X = rng.normal(size=(100, 2))
        y = (X[:, 0] > 0).astype(float)
        state = ab_fit(X, y, rounds=10, depth=1)
        errors = []
        for t in range(1, len(state.trees) + 1):
            prefix = BoostState(alphas=state.alphas[:t], trees=state.trees[:t])
            pred = (ab_scores(prefix, X) >= 0.5).astype(float)
            errors.append(float(np.mean(pred != y)))
        assert all(b <= a + 1e-12 for a, b in zip(errors, errors[1:]))
        assert errors[-1] == 0.0

    def test_depth_bounds(self):
        with pytest.raises(LearnError):
            ab_fit(np.zeros((4, 1)), np.array([0.0, 1, 0, 1]), depth=4)


class TestCrossValidate:
    def test_separable_corpus_near_perfect(self):
        import dataclasses

        base = SynthConfig.paper_like(seed=3, n_humans=150, n_fakes=150)
        config = dataclasses.replace(
            base,
            human=dataclasses.replace(base.human, p_atypical=0.0),
            fake=dataclasses.replace(base.fake, p_atypical=0.0),
        )
        ds = synthesize(config)
        report = cross_validate("dt", ds, specs_by_names(YANG_SET), k=10, seed=1)
        assert report.pooled.mcc >= 0.99
        assert report.pooled_matrix.total == 300

    def test_pooled_counts_are_fold_sums(self, paper_like_small):
        report = cross_validate("dt", paper_like_small, CLASS_A_SPECS, k=5, seed=2)
        total = report.pooled_matrix
        assert total.total == len(paper_like_small)
        assert len(report.fold_matrices) == 5

    def test_label_shuffle_control(self, paper_like_small):
        rng = make_rng(17)
        ids = paper_like_small.account_ids
        labels = [paper_like_small.accounts[uid].label for uid in ids]
        shuffled = {uid: labels[i] for uid, i in zip(ids, rng.permutation(len(ids)))}
        control = paper_like_small.relabeled(shuffled)
        report = cross_validate("dt", control, CLASS_A_SPECS, k=5, seed=2)
        assert abs(report.pooled.mcc) <= 0.1

    def test_jobs_do_not_change_results(self, paper_like_small):
        a = cross_validate("dt", paper_like_small, CLASS_A_SPECS, k=4, seed=3, jobs=1)
        b = cross_validate("dt", paper_like_small, CLASS_A_SPECS, k=4, seed=3, jobs=3)
        assert a.as_dict() == b.as_dict()

    def test_class_a_close_to_full_features(self):
        from fakescope.features import catalog

        ds = synthesize(SynthConfig.paper_like(seed=19, n_humans=400, n_fakes=400))
        class_a = cross_validate("rf", ds, CLASS_A_SPECS, k=5, seed=4)
        full = cross_validate("rf", ds, catalog(), k=5, seed=4)
        assert full.pooled.mcc >= class_a.pooled.mcc - 0.01


class TestSweep:
    def test_single_fraction_matches_plain_cv(self, paper_like_small):
        report = class_distribution_sweep(
            paper_like_small, "dt", [0.5], target_size=len(paper_like_small),
            k=4, seed=6, specs=CLASS_A_SPECS,
        )
        assert len(report.entries) == 1
        plain = cross_validate(
            "dt",
            paper_like_small,
            CLASS_A_SPECS,
            k=4,
            seed=derive_seed(6, 29, 0),
        )
        assert report.entries[0].report.pooled.as_dict() == plain.pooled.as_dict()

    def test_empty_fraction_list_rejected(self, paper_like_small):
        with pytest.raises(LearnError):
            class_distribution_sweep(
                paper_like_small, "dt", [], target_size=100, k=3, seed=0, specs=CLASS_A_SPECS
            )

    def test_reports_best_fraction_per_metric(self, paper_like_small):
        report = class_distribution_sweep(
            paper_like_small, "dt", [0.3, 0.5, 0.7], target_size=400,
            k=3, seed=6, specs=CLASS_A_SPECS,
        )
        assert set(report.best_fraction) >= {"accuracy", "mcc", "auc"}
        assert all(v in (0.3, 0.5, 0.7) for v in report.best_fraction.values())
