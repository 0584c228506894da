"""Numeric feature extraction over a corpus.

All ratios are kept finite: x/0 is 0 for a zero numerator and a large cap
otherwise. Boolean features are encoded 0/1. Rows are ordered by account id
so extraction is deterministic and safely parallelizable per account.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from ..corpus.errors import DanglingReferenceError, InsufficientDataError
from ..corpus.model import (
    Account,
    LabeledDataset,
    RelationshipGraph,
    Tweet,
)
from ..metrics import MetricError
from ..rules.catalog import (
    RuleId,
    account_age_days,
    capped_ratio,
    evaluate_rule,
)
from ..rules.context import AccountContext, picture_counts
from .catalog import FeatureSpec

SIMILARITY_WINDOW = 15
SIMILARITY_RUN = 4


def _word_runs(text: str, run_length: int) -> set[tuple[str, ...]]:
    words = text.lower().split()
    return {tuple(words[i : i + run_length]) for i in range(len(words) - run_length + 1)}


def message_similarity(
    tweets: Sequence[Tweet],
    window: int = SIMILARITY_WINDOW,
    run_length: int = SIMILARITY_RUN,
) -> bool:
    """True when two of the newest `window` tweets share `run_length`
    consecutive words (case-insensitive, whitespace tokens)."""
    recent = list(tweets[:window])
    seen: list[set[tuple[str, ...]]] = []
    for tweet in recent:
        runs = _word_runs(tweet.text, run_length)
        if runs and any(runs & other for other in seen):
            return True
        seen.append(runs)
    return False


def api_tweet_similarity(
    tweets: Sequence[Tweet],
    window: int = SIMILARITY_WINDOW,
    run_length: int = SIMILARITY_RUN,
) -> bool:
    """Message similarity restricted to tweets posted from non-web sources."""
    return message_similarity(
        [t for t in tweets if t.from_api], window=window, run_length=run_length
    )


@dataclass(frozen=True)
class NeighborStats:
    avg_neighbors_followers: float
    avg_neighbors_tweets: float
    friends_to_median_neighbors_followers: float


def _neighbor_values(graph: RelationshipGraph, ids: Iterable[str], field: str) -> list[int]:
    values = []
    for nid in ids:
        summary = graph.stats_for(nid)
        if summary is None:
            raise DanglingReferenceError(f"no summary for neighbor {nid}")
        values.append(getattr(summary, field))
    return values


def neighbor_stats(account: Account, graph: RelationshipGraph) -> NeighborStats:
    """Relationship statistics; zero-degree accounts impute to zero."""
    friends = graph.friends_of(account.user_id)
    followers = graph.followers_of(account.user_id)
    friend_followers = _neighbor_values(graph, friends, "followers_count")
    follower_statuses = _neighbor_values(graph, followers, "statuses_count")
    avg_friends = sum(friend_followers) / len(friend_followers) if friend_followers else 0.0
    avg_followers = (
        sum(follower_statuses) / len(follower_statuses) if follower_statuses else 0.0
    )
    if friend_followers:
        median = statistics.median(friend_followers)
        ratio = capped_ratio(account.friends_count, median)
    else:
        ratio = 0.0
    return NeighborStats(
        avg_neighbors_followers=avg_friends,
        avg_neighbors_tweets=avg_followers,
        friends_to_median_neighbors_followers=ratio,
    )


def bidirectional_link_ratio(account: Account, graph: RelationshipGraph) -> float:
    friends = graph.friends_of(account.user_id)
    if not friends:
        return 0.0
    mutual = sum(1 for friend in friends if graph.has_edge(friend, account.user_id))
    return mutual / len(friends)


@dataclass(frozen=True)
class FeatureContext:
    rule_ctx: AccountContext
    graph: Optional[RelationshipGraph]

    @property
    def account(self) -> Account:
        return self.rule_ctx.account

    def timeline(self) -> tuple[Tweet, ...]:
        if self.rule_ctx.tweets is None:
            raise InsufficientDataError("timeline withheld")
        return self.rule_ctx.tweets

    def need_graph(self) -> RelationshipGraph:
        if self.graph is None:
            raise InsufficientDataError("graph withheld")
        return self.graph


def _rule_flag(ruleset: str, index: int) -> Callable[[FeatureContext], float]:
    def fn(ctx: FeatureContext) -> float:
        return float(evaluate_rule(RuleId(ruleset, index), ctx.rule_ctx).satisfied)

    return fn


def _api_tweets(ctx: FeatureContext) -> list[Tweet]:
    return [t for t in ctx.timeline() if t.from_api]


def _url_ratio(ctx: FeatureContext) -> float:
    tweets = ctx.timeline()
    if not tweets:
        return 0.0
    return sum(1 for t in tweets if t.num_urls >= 1) / len(tweets)


def _api_ratio(ctx: FeatureContext) -> float:
    tweets = ctx.timeline()
    if not tweets:
        return 0.0
    return len(_api_tweets(ctx)) / len(tweets)


def _api_url_ratio(ctx: FeatureContext) -> float:
    api = _api_tweets(ctx)
    if not api:
        return 0.0
    return sum(1 for t in api if t.num_urls >= 1) / len(api)


_EXTRACTORS: dict[str, tuple[str, Callable[[FeatureContext], float]]] = {
    # Class A: profile only
    "friends_followers_sq_ratio": (
        "profile",
        lambda ctx: capped_ratio(ctx.account.friends_count, ctx.account.followers_count**2),
    ),
    "age_days": ("profile", lambda ctx: account_age_days(ctx.rule_ctx)),
    "statuses_count": ("profile", lambda ctx: float(ctx.account.statuses_count)),
    "has_name": ("profile", _rule_flag("CC", 1)),
    "friends_count": ("profile", lambda ctx: float(ctx.account.friends_count)),
    "has_profile_url": ("profile", _rule_flag("CC", 9)),
    "following_rate": (
        "profile",
        lambda ctx: capped_ratio(ctx.account.friends_count, account_age_days(ctx.rule_ctx)),
    ),
    "default_image_after_two_months": ("profile", _rule_flag("SB", 7)),
    "in_public_list": ("profile", _rule_flag("CC", 6)),
    "has_custom_image": ("profile", _rule_flag("CC", 2)),
    "friends_per_follower_ge_50": ("profile", _rule_flag("SB", 1)),
    "bot_in_biography": ("profile", _rule_flag("SOS", 1)),
    "shares_profile_picture": ("profile", _rule_flag("SOS", 4)),
    "double_followers_cover_friends": ("profile", _rule_flag("CC", 19)),
    "friends_per_follower_ge_100": ("profile", _rule_flag("SOS", 2)),
    "has_location": ("profile", _rule_flag("CC", 3)),
    "empty_profile_many_friends": ("profile", _rule_flag("SB", 8)),
    "has_biography": ("profile", _rule_flag("CC", 4)),
    "followers_count": ("profile", lambda ctx: float(ctx.account.followers_count)),
    # Class B: timeline
    "has_geolocalized_tweet": ("timeline", _rule_flag("CC", 8)),
    "has_favourites": ("timeline", _rule_flag("CC", 10)),
    "uses_punctuation": ("timeline", _rule_flag("CC", 11)),
    "uses_hashtags": ("timeline", _rule_flag("CC", 12)),
    "used_iphone": ("timeline", _rule_flag("CC", 13)),
    "used_android": ("timeline", _rule_flag("CC", 14)),
    "used_foursquare": ("timeline", _rule_flag("CC", 15)),
    "used_instagram": ("timeline", _rule_flag("CC", 16)),
    "used_web_client": ("timeline", _rule_flag("CC", 17)),
    "mentions_users": ("timeline", _rule_flag("CC", 18)),
    "tweets_beyond_urls": ("timeline", _rule_flag("CC", 20)),
    "has_retweeted_tweet": ("timeline", _rule_flag("CC", 21)),
    "uses_multiple_clients": ("timeline", _rule_flag("CC", 22)),
    "repeats_sentence_to_accounts": ("timeline", _rule_flag("SOS", 3)),
    "tweets_from_api": ("timeline", _rule_flag("SOS", 5)),
    "spam_phrase_heavy": ("timeline", _rule_flag("SB", 2)),
    "repeats_same_tweet": ("timeline", _rule_flag("SB", 3)),
    "mostly_retweets": ("timeline", _rule_flag("SB", 4)),
    "mostly_links": ("timeline", _rule_flag("SB", 5)),
    "num_retweets": (
        "timeline",
        lambda ctx: float(sum(1 for t in ctx.timeline() if t.is_retweet)),
    ),
    "num_url_tweets": (
        "timeline",
        lambda ctx: float(sum(1 for t in ctx.timeline() if t.num_urls >= 1)),
    ),
    "message_similarity": (
        "timeline",
        lambda ctx: float(message_similarity(ctx.timeline())),
    ),
    "url_ratio": ("timeline", _url_ratio),
    "api_ratio": ("timeline", _api_ratio),
    "api_url_ratio": ("timeline", _api_url_ratio),
    "api_tweet_similarity": (
        "timeline",
        lambda ctx: float(api_tweet_similarity(ctx.timeline())),
    ),
    # Class C: relationships
    "bidirectional_link_ratio": (
        "graph",
        lambda ctx: bidirectional_link_ratio(ctx.account, ctx.need_graph()),
    ),
    "avg_neighbor_followers": (
        "graph",
        lambda ctx: neighbor_stats(ctx.account, ctx.need_graph()).avg_neighbors_followers,
    ),
    "avg_neighbor_tweets": (
        "graph",
        lambda ctx: neighbor_stats(ctx.account, ctx.need_graph()).avg_neighbors_tweets,
    ),
    "friends_to_median_neighbor_followers": (
        "graph",
        lambda ctx: neighbor_stats(
            ctx.account, ctx.need_graph()
        ).friends_to_median_neighbors_followers,
    ),
}


@dataclass
class FeatureMatrix:
    specs: tuple[FeatureSpec, ...]
    account_ids: tuple[str, ...]
    values: np.ndarray
    labels: tuple[Optional[str], ...]
    provenance: dict

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(spec.name for spec in self.specs)

    @property
    def n_rows(self) -> int:
        return len(self.account_ids)

    def column(self, name: str) -> np.ndarray:
        idx = self.feature_names.index(name)
        return self.values[:, idx]

    def y01(self) -> np.ndarray:
        if any(label not in ("human", "fake") for label in self.labels):
            raise MetricError("matrix has unlabeled rows")
        return np.asarray([1.0 if label == "fake" else 0.0 for label in self.labels])

    def take_rows(self, indices: Sequence[int]) -> "FeatureMatrix":
        idx = list(indices)
        return FeatureMatrix(
            specs=self.specs,
            account_ids=tuple(self.account_ids[i] for i in idx),
            values=self.values[idx, :].copy(),
            labels=tuple(self.labels[i] for i in idx),
            provenance=dict(self.provenance),
        )

    def take_ids(self, ids: Sequence[str]) -> "FeatureMatrix":
        pos = {uid: i for i, uid in enumerate(self.account_ids)}
        return self.take_rows([pos[uid] for uid in ids])

    def drop_feature(self, name: str) -> "FeatureMatrix":
        keep = [i for i, spec in enumerate(self.specs) if spec.name != name]
        if len(keep) == len(self.specs):
            raise KeyError(f"feature {name!r} not in matrix")
        return FeatureMatrix(
            specs=tuple(self.specs[i] for i in keep),
            account_ids=self.account_ids,
            values=self.values[:, keep].copy(),
            labels=self.labels,
            provenance=dict(self.provenance),
        )

    def to_csv(self, path) -> Path:
        path = Path(path)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["account_id", *self.feature_names, "label"])
            for i, uid in enumerate(self.account_ids):
                row = [uid] + [repr(float(v)) for v in self.values[i]] + [self.labels[i] or ""]
                writer.writerow(row)
        return path

    def to_jsonl(self, path) -> Path:
        path = Path(path)
        with open(path, "w", encoding="utf-8") as fh:
            header = {
                "type": "metadata",
                "features": list(self.feature_names),
                "provenance": self.provenance,
            }
            fh.write(json.dumps(header, sort_keys=True) + "\n")
            for i, uid in enumerate(self.account_ids):
                record = {
                    "account_id": uid,
                    "label": self.labels[i],
                    "values": [float(v) for v in self.values[i]],
                }
                fh.write(json.dumps(record, sort_keys=True) + "\n")
        return path


def extract(dataset: LabeledDataset, specs: Sequence[FeatureSpec]) -> FeatureMatrix:
    """Extract the requested features for every account, rows by account id."""
    specs = tuple(specs)
    if not specs:
        raise ValueError("no feature specs given")
    for name, (requirement, _) in ((s.name, _EXTRACTORS[s.name]) for s in specs):
        if requirement == "timeline" and dataset.tweets is None:
            raise InsufficientDataError(f"feature {name!r} needs tweets, which were not loaded")
        if requirement == "graph" and dataset.graph is None:
            raise InsufficientDataError(f"feature {name!r} needs the graph, which was not loaded")

    counts = picture_counts(dataset)
    rows = np.empty((len(dataset), len(specs)), dtype=np.float64)
    labels: list[Optional[str]] = []
    for i, uid in enumerate(dataset.accounts):
        rule_ctx = AccountContext(
            account=dataset.accounts[uid],
            tweets=None if dataset.tweets is None else dataset.timeline(uid),
            reference_time=dataset.reference_time,
            fingerprint_counts=counts,
        )
        ctx = FeatureContext(rule_ctx=rule_ctx, graph=dataset.graph)
        for j, spec in enumerate(specs):
            rows[i, j] = _EXTRACTORS[spec.name][1](ctx)
        labels.append(dataset.accounts[uid].label)
    if not np.all(np.isfinite(rows)):
        raise ValueError("extraction produced non-finite values")
    return FeatureMatrix(
        specs=specs,
        account_ids=dataset.account_ids,
        values=rows,
        labels=tuple(labels),
        provenance={
            "dataset": dataset.provenance,
            "reference_time": dataset.reference_time.isoformat(),
            "age_unit": "days",
        },
    )
