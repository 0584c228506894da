"""Leave-one-feature-out sensitivity: locals, fusion, ranking, determinism."""

import numpy as np
import pytest

from fakescope.features import FeatureSpec
from fakescope.features.catalog import BOOLEAN, RATIO
from fakescope.features.extract import FeatureMatrix
from fakescope.seeding import make_rng
from fakescope.sensitivity import (
    SensitivityError,
    analyze_matrices,
    local_sensitivity,
)


def build_matrix(X, y, names, kinds=None, prefix="tr"):
    X = np.asarray(X, dtype=np.float64)
    kinds = kinds or [RATIO] * X.shape[1]
    specs = tuple(
        FeatureSpec(name=n, cost_class="A", source_set="CC", kind=k)
        for n, k in zip(names, kinds)
    )
    return FeatureMatrix(
        specs=specs,
        account_ids=tuple(f"{prefix}{i:05d}" for i in range(X.shape[0])),
        values=X,
        labels=tuple("fake" if v else "human" for v in y),
        provenance={},
    )


def noise_corpus(seed, n, d_noise=4, with_constant=True, prefix="tr"):
    """One perfect boolean column, iid noise columns, one constant column."""
    rng = make_rng(seed)
    y = np.array([1.0] * (n // 2) + [0.0] * (n - n // 2))
    rng.shuffle(y)
    columns = [y.copy()]  # 'perfect'
    names = ["perfect"]
    kinds = [BOOLEAN]
    for j in range(d_noise):
        columns.append(rng.normal(size=n))
        names.append(f"noise{j}")
        kinds.append(RATIO)
    if with_constant:
        columns.append(np.ones(n))
        names.append("always_one")
        kinds.append(BOOLEAN)
    X = np.column_stack(columns)
    return build_matrix(X, y, names, kinds, prefix=prefix)


class TestLocalSensitivity:
    def test_unchanged_model(self):
        assert local_sensitivity(0.9, 0.9) == pytest.approx(1.0)

    def test_halved(self):
        assert local_sensitivity(0.9, 0.45) == pytest.approx(0.5)

    def test_negative_clamps_to_zero(self):
        assert local_sensitivity(0.9, -0.1) == 0.0

    def test_nonpositive_full_mcc_rejected(self):
        with pytest.raises(SensitivityError):
            local_sensitivity(0.0, 0.5)


class TestAnalyze:
    def test_perfect_feature_ranks_first_noise_low(self):
        train = noise_corpus(1, 400, prefix="tr")
        test = noise_corpus(2, 240, prefix="te")
        report = analyze_matrices(train, test, algorithms=("dt", "nb", "lr"), seed=5)
        top = report.scores[0]
        assert top.feature == "perfect"
        assert top.normalized_importance == 1.0
        for score in report.scores[1:]:
            assert score.normalized_importance < 0.5

    def test_constant_feature_ranks_last_with_unit_locals(self):
        train = noise_corpus(3, 400, prefix="tr")
        test = noise_corpus(4, 240, prefix="te")
        report = analyze_matrices(
            train, test, algorithms=("dt", "knn", "nb", "lr"), seed=7
        )
        assert report.ranking()[-1] == "always_one"
        for cell in report.cells:
            if cell.feature == "always_one":
                assert cell.local == pytest.approx(1.0)
                assert cell.changed_predictions == 0

    def test_duplicated_column_leaves_tree_models_unchanged(self):
        rng = make_rng(11)
        n = 300
        y = (rng.random(n) < 0.5).astype(float)
        signal = y + 0.1 * rng.normal(size=n)
        X = np.column_stack([signal, signal, rng.normal(size=n)])
        train = build_matrix(X, y, ["twin_a", "twin_b", "noise"], prefix="tr")
        rng2 = make_rng(12)
        y2 = (rng2.random(120) < 0.5).astype(float)
        signal2 = y2 + 0.1 * rng2.normal(size=120)
        X2 = np.column_stack([signal2, signal2, rng2.normal(size=120)])
        test = build_matrix(X2, y2, ["twin_a", "twin_b", "noise"], prefix="te")
        report = analyze_matrices(train, test, algorithms=("dt",), seed=3)
        for cell in report.cells:
            if cell.feature in ("twin_a", "twin_b"):
                assert cell.local == pytest.approx(1.0)
                assert cell.changed_predictions == 0

    def test_deterministic_across_jobs(self):
        train = noise_corpus(21, 300, prefix="tr")
        test = noise_corpus(22, 200, prefix="te")
        kwargs = dict(algorithms=("dt", "rf", "nb"), seed=9)
        sequential = analyze_matrices(train, test, jobs=1, **kwargs)
        threaded = analyze_matrices(train, test, jobs=4, **kwargs)
        assert sequential.cells == threaded.cells
        assert sequential.scores == threaded.scores

    def test_useless_classifier_excluded_with_warning(self):
        train = noise_corpus(32, 200, prefix="tr")
        test = noise_corpus(33, 150, prefix="te")
        # k equal to the training size votes with the global mean everywhere
        with pytest.warns(UserWarning, match="excluded"):
            report = analyze_matrices(
                train,
                test,
                algorithms=("dt", "knn"),
                seed=2,
                params={"knn": {"k": 200}},
            )
        assert "knn" in report.excluded
        assert "dt" in report.weights

    def test_overlapping_train_test_rejected(self):
        m = noise_corpus(41, 100, prefix="x")
        with pytest.raises(SensitivityError):
            analyze_matrices(m, m, algorithms=("dt",), seed=0)

    def test_weights_sum_to_one(self):
        train = noise_corpus(51, 300, prefix="tr")
        test = noise_corpus(52, 200, prefix="te")
        report = analyze_matrices(train, test, algorithms=("dt", "nb", "lr"), seed=1)
        assert sum(report.weights.values()) == pytest.approx(1.0)
