"""Shared fixtures: hand-built micro corpora and session-scoped synthetics."""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

import numpy as np
import pytest

from fakescope.corpus import (
    Account,
    LabeledDataset,
    RelationshipGraph,
    SynthConfig,
    Tweet,
    synthesize,
)

UTC = timezone.utc
REF = datetime(2015, 4, 1, tzinfo=UTC)


def make_account(uid: str, label: str | None = None, **overrides) -> Account:
    fields = dict(
        user_id=uid,
        screen_name=f"sn_{uid}",
        name="Sam",
        created_at=REF - timedelta(days=400),
        followers_count=100,
        friends_count=50,
        statuses_count=60,
        listed_count=1,
        favourites_count=2,
        url=None,
        location=None,
        description=None,
        default_profile_image=False,
        profile_image_fingerprint=f"pic-{uid}",
        label=label,
    )
    fields.update(overrides)
    return Account(**fields)


def make_tweet(uid: str, idx: int, **overrides) -> Tweet:
    fields = dict(
        tweet_id=f"{uid}-t{idx}",
        user_id=uid,
        created_at=REF - timedelta(days=10, minutes=idx),
        text="just a plain tweet",
        source="web",
        is_retweet=False,
        retweet_count=0,
        is_geolocalized=False,
        num_hashtags=0,
        num_mentions=0,
        num_urls=0,
    )
    fields.update(overrides)
    return Tweet(**fields)


def make_dataset(accounts, tweets=None, edges=(), neighbors=None, reference_time=REF):
    graph = RelationshipGraph(edges, neighbors or {})
    timelines = {a.user_id: () for a in accounts}
    for uid, rows in (tweets or {}).items():
        timelines[uid] = tuple(rows)
    return LabeledDataset(
        accounts={a.user_id: a for a in accounts},
        tweets=timelines,
        graph=graph,
        reference_time=reference_time,
        provenance="fixture",
    )


@pytest.fixture(scope="session")
def paper_like_small() -> LabeledDataset:
    return synthesize(SynthConfig.paper_like(seed=11, n_humans=500, n_fakes=500))


@pytest.fixture(scope="session")
def paper_like_full() -> LabeledDataset:
    return synthesize(SynthConfig.paper_like(seed=11))


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(20240901))
