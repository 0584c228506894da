"""Crawling-cost model: API calls, best/worst bounds, rate-limited time.

Features fall into three crawl classes — profile pages, timelines,
relationship lists — with per-class page sizes and rate limits. The three
APIs can be polled concurrently, so total time is the slowest class, not
the sum. The initial listing of the target's followers is reported as a
separate line item and excluded from per-class totals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .features.catalog import COST_ORDER, FeatureSpec

PerFollower = Union[int, Sequence[int]]

UNPREDICTABLE = "unpredictable"

#: Public API page sizes: profiles per lookup, tweets per timeline page,
#: ids per relationship page.
DEFAULT_PAGE_SIZES = {"profiles": 100, "tweets": 200, "relations": 5000}

#: Calls allowed per minute for each API class.
DEFAULT_RATES = {"profile": 12.0, "timeline": 12.0, "relationship": 1.0}

#: Timelines cap out at 3200 tweets, i.e. 16 pages per follower.
MAX_TIMELINE_PAGES = 16


class CostError(ValueError):
    pass


@dataclass(frozen=True)
class TargetProfile:
    """The account under investigation.

    Per-follower statistics can be exact sequences (one entry per follower)
    or a single value shared by all followers.
    """

    followers: int
    tweets_per_follower: PerFollower = 0
    friends_per_follower: PerFollower = 0
    followers_per_follower: PerFollower = 0

    def check(self) -> None:
        if self.followers < 0:
            raise CostError("follower count must be non-negative")
        for name in ("tweets_per_follower", "friends_per_follower", "followers_per_follower"):
            value = getattr(self, name)
            if isinstance(value, int):
                if value < 0:
                    raise CostError(f"{name} must be non-negative")
            else:
                if len(value) != self.followers:
                    raise CostError(
                        f"{name}: expected {self.followers} entries, got {len(value)}"
                    )
                if any(v < 0 for v in value):
                    raise CostError(f"{name} must be non-negative")


def _pages_total(per_follower: PerFollower, n_followers: int, page: int) -> int:
    if isinstance(per_follower, int):
        return n_followers * math.ceil(per_follower / page)
    return sum(math.ceil(v / page) for v in per_follower)


@dataclass(frozen=True)
class ClassBounds:
    profile: int
    timeline: int
    relationship: Optional[int]  # None marks the unpredictable worst case
    relationship_note: str = ""


@dataclass(frozen=True)
class CostEstimate:
    calls_profile: int
    calls_timeline: int
    calls_relationship: int
    initial_listing_calls: int
    best_case: ClassBounds
    worst_case: ClassBounds
    minutes_profile: float
    minutes_timeline: float
    minutes_relationship: float
    minutes_total: float
    rates: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "calls_profile": self.calls_profile,
            "calls_timeline": self.calls_timeline,
            "calls_relationship": self.calls_relationship,
            "initial_listing_calls": self.initial_listing_calls,
            "best_profile": self.best_case.profile,
            "best_timeline": self.best_case.timeline,
            "best_relationship": self.best_case.relationship,
            "worst_profile": self.worst_case.profile,
            "worst_timeline": self.worst_case.timeline,
            "worst_relationship": self.worst_case.relationship_note,
            "minutes_profile": self.minutes_profile,
            "minutes_timeline": self.minutes_timeline,
            "minutes_relationship": self.minutes_relationship,
            "minutes_total": self.minutes_total,
        }


def bounds(followers: int, page_sizes: Optional[dict] = None) -> tuple[ClassBounds, ClassBounds]:
    """(best, worst) call counts per class, as functions of the follower count."""
    if followers < 0:
        raise CostError("follower count must be non-negative")
    pages = dict(DEFAULT_PAGE_SIZES, **(page_sizes or {}))
    profile_calls = math.ceil(followers / pages["profiles"])
    best = ClassBounds(
        profile=profile_calls,
        timeline=followers,
        relationship=2 * followers,
    )
    worst = ClassBounds(
        profile=profile_calls,
        timeline=MAX_TIMELINE_PAGES * followers,
        relationship=None,
        relationship_note=UNPREDICTABLE,
    )
    return best, worst


def estimate(
    profile: TargetProfile,
    page_sizes: Optional[dict] = None,
    rates: Optional[dict] = None,
) -> CostEstimate:
    """Exact call counts and rate-limited minutes for the given stats."""
    profile.check()
    pages = dict(DEFAULT_PAGE_SIZES, **(page_sizes or {}))
    rate = dict(DEFAULT_RATES, **(rates or {}))
    f = profile.followers

    calls_profile = math.ceil(f / pages["profiles"])
    calls_timeline = _pages_total(profile.tweets_per_follower, f, pages["tweets"])
    calls_relationship = _pages_total(
        profile.followers_per_follower, f, pages["relations"]
    ) + _pages_total(profile.friends_per_follower, f, pages["relations"])
    initial = math.ceil(f / pages["relations"])

    minutes_profile = calls_profile / rate["profile"]
    minutes_timeline = calls_timeline / rate["timeline"]
    minutes_relationship = calls_relationship / rate["relationship"]
    best, worst = bounds(f, pages)
    return CostEstimate(
        calls_profile=calls_profile,
        calls_timeline=calls_timeline,
        calls_relationship=calls_relationship,
        initial_listing_calls=initial,
        best_case=best,
        worst_case=worst,
        minutes_profile=minutes_profile,
        minutes_timeline=minutes_timeline,
        minutes_relationship=minutes_relationship,
        minutes_total=max(minutes_profile, minutes_timeline, minutes_relationship),
        rates=rate,
    )


def classifier_cost_class(specs: Sequence[FeatureSpec]) -> str:
    """A feature set costs as much as its most expensive feature."""
    specs = list(specs)
    if not specs:
        raise CostError("empty feature list")
    return max(specs, key=lambda s: COST_ORDER[s.cost_class]).cost_class
