"""Crawl-budget model: exact counts, bounds, rates, and cost classing."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fakescope.cost import (
    CostError,
    TargetProfile,
    UNPREDICTABLE,
    bounds,
    classifier_cost_class,
    estimate,
)
from fakescope.features import CLASS_A_SPECS, catalog, specs_by_names
from fakescope.features.catalog import YANG_SET


class TestEstimate:
    def test_worked_example(self):
        profile = TargetProfile(
            followers=100,
            tweets_per_follower=450,
            friends_per_follower=4000,
            followers_per_follower=4000,
        )
        result = estimate(profile)
        assert result.calls_profile == 1
        assert result.calls_timeline == 300
        assert result.calls_relationship == 200
        assert result.minutes_profile == pytest.approx(1 / 12)
        assert result.minutes_timeline == pytest.approx(25.0)
        assert result.minutes_relationship == pytest.approx(200.0)
        assert result.minutes_total == pytest.approx(200.0)

    def test_full_timeline_hits_worst_case(self):
        result = estimate(TargetProfile(followers=1, tweets_per_follower=3200))
        assert result.calls_timeline == 16
        assert result.worst_case.timeline == 16

    def test_megastar_scenario_exact_formula(self):
        f = 60_000_000
        result = estimate(
            TargetProfile(
                followers=f, friends_per_follower=f, followers_per_follower=f
            )
        )
        # ceil(60e6 / 5000) = 12000 pages per direction per follower
        assert result.calls_relationship == 24_000 * f

    def test_exact_lists(self):
        profile = TargetProfile(
            followers=3,
            tweets_per_follower=[0, 201, 400],
            friends_per_follower=[1, 5000, 5001],
            followers_per_follower=[0, 0, 0],
        )
        result = estimate(profile)
        assert result.calls_timeline == 0 + 2 + 2
        assert result.calls_relationship == (1 + 1 + 2) + 0

    def test_initial_listing_reported_separately(self):
        result = estimate(TargetProfile(followers=12_000))
        assert result.initial_listing_calls == 3
        assert result.calls_relationship == 0

    def test_zero_tweet_followers_cost_nothing(self):
        result = estimate(TargetProfile(followers=10, tweets_per_follower=0))
        assert result.calls_timeline == 0

    def test_negative_counts_rejected(self):
        with pytest.raises(CostError):
            estimate(TargetProfile(followers=-1))
        with pytest.raises(CostError):
            estimate(TargetProfile(followers=2, tweets_per_follower=[1, -2]))

    def test_length_mismatch_rejected(self):
        with pytest.raises(CostError):
            estimate(TargetProfile(followers=3, tweets_per_follower=[1, 2]))

    def test_rates_rescale_minutes_only(self):
        profile = TargetProfile(followers=100, tweets_per_follower=450)
        base = estimate(profile)
        fast = estimate(profile, rates={"timeline": 24.0})
        assert fast.calls_timeline == base.calls_timeline
        assert fast.minutes_timeline == pytest.approx(base.minutes_timeline / 2)


class TestBounds:
    def test_zero_followers(self):
        best, worst = bounds(0)
        assert (best.profile, best.timeline, best.relationship) == (0, 0, 0)
        assert worst.timeline == 0

    def test_thousand_followers(self):
        best, worst = bounds(1000)
        assert best.profile == 10
        assert best.timeline == 1000
        assert best.relationship == 2000
        assert worst.timeline == 16_000

    def test_relationship_worst_case_flagged(self):
        _, worst = bounds(1000)
        assert worst.relationship is None
        assert worst.relationship_note == UNPREDICTABLE


class TestCostClass:
    def test_all_class_a(self):
        assert classifier_cost_class(CLASS_A_SPECS) == "A"

    def test_one_class_b_dominates(self):
        assert classifier_cost_class(list(CLASS_A_SPECS) + [catalog("B")[0]]) == "B"

    def test_yang_set_is_class_c(self):
        assert classifier_cost_class(specs_by_names(YANG_SET)) == "C"

    def test_empty_rejected(self):
        with pytest.raises(CostError):
            classifier_cost_class([])


@given(
    st.integers(0, 500),
    st.integers(0, 10_000),
    st.integers(0, 100_000),
    st.integers(0, 100_000),
)
def test_monotone_and_bounded_by_best_case(f, t, phi, ff):
    result = estimate(
        TargetProfile(
            followers=f,
            tweets_per_follower=t,
            friends_per_follower=phi,
            followers_per_follower=ff,
        )
    )
    best, _ = bounds(f)
    assert result.calls_profile == best.profile
    if t > 0:
        assert best.timeline <= result.calls_timeline
    if phi > 0 and ff > 0:
        assert best.relationship <= result.calls_relationship
    bigger = estimate(
        TargetProfile(
            followers=f,
            tweets_per_follower=t + 1,
            friends_per_follower=phi + 1,
            followers_per_follower=ff + 1,
        )
    )
    assert bigger.calls_timeline >= result.calls_timeline
    assert bigger.calls_relationship >= result.calls_relationship
