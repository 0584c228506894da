"""Corpus ingestion and serialization (CSV and JSON-lines variants)."""

from __future__ import annotations

import csv
import json
from datetime import datetime, timedelta
from pathlib import Path
from typing import Mapping, Optional

from .model import (
    Account,
    LabeledDataset,
    NeighborSummary,
    RelationshipGraph,
    Tweet,
    count_entities,
    utc,
)
from .errors import DanglingReferenceError, DuplicateIdError, EmptyCorpusError, MalformedRowError

USER_COLUMNS = [
    "id",
    "screen_name",
    "name",
    "created_at",
    "followers_count",
    "friends_count",
    "statuses_count",
    "listed_count",
    "favourites_count",
    "url",
    "location",
    "description",
    "default_profile_image",
    "profile_image_hash",
    "label",
]

TWEET_COLUMNS = [
    "id",
    "user_id",
    "created_at",
    "text",
    "source",
    "is_retweet",
    "retweet_count",
    "geo",
    "num_hashtags",
    "num_mentions",
    "num_urls",
]

EDGE_COLUMNS = ["follower_id", "followed_id"]
NEIGHBOR_COLUMNS = ["id", "followers_count", "statuses_count"]


def parse_timestamp(raw: str) -> datetime:
    text = raw.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    return utc(datetime.fromisoformat(text))


def format_timestamp(dt: datetime) -> str:
    return utc(dt).strftime("%Y-%m-%dT%H:%M:%SZ")


def _parse_int(raw: str) -> int:
    return int(raw.strip())


def _parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("1", "true"):
        return True
    if value in ("0", "false", ""):
        return False
    raise ValueError(f"not a 0/1 flag: {raw!r}")


def _optional(raw: Optional[str]) -> Optional[str]:
    if raw is None:
        return None
    return raw if raw.strip() else None


class _RowReader:
    """Iterates rows of a CSV or JSONL file as dicts, tracking line numbers."""

    def __init__(self, path: Path, fmt: str, required: list[str]):
        self.path = path
        self.fmt = fmt
        self.required = required

    def __iter__(self):
        if self.fmt == "csv":
            with open(self.path, newline="", encoding="utf-8") as fh:
                reader = csv.DictReader(fh)
                header = reader.fieldnames or []
                missing = [c for c in self.required if c not in header]
                if missing:
                    raise MalformedRowError(
                        str(self.path), 1, missing[0], "missing required column"
                    )
                for row in reader:
                    yield reader.line_num, row
        else:
            with open(self.path, encoding="utf-8") as fh:
                for line_num, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    try:
                        row = json.loads(line)
                    except json.JSONDecodeError as exc:
                        raise MalformedRowError(
                            str(self.path), line_num, "-", f"invalid JSON: {exc.msg}"
                        ) from exc
                    if not isinstance(row, dict):
                        raise MalformedRowError(
                            str(self.path), line_num, "-", "expected one object per line"
                        )
                    missing = [c for c in self.required if c not in row]
                    if missing:
                        raise MalformedRowError(
                            str(self.path), line_num, missing[0], "missing required field"
                        )
                    yield line_num, {k: _json_cell(v) for k, v in row.items()}


def _json_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    return str(value)


def _field(path: Path, line: int, row: Mapping[str, str], column: str, parser, default=None):
    raw = row.get(column)
    if raw is None or not str(raw).strip():
        if default is not None or column in ("url", "location", "description", "label"):
            return default
        raise MalformedRowError(str(path), line, column, "empty value")
    try:
        return parser(str(raw))
    except (ValueError, TypeError) as exc:
        raise MalformedRowError(str(path), line, column, str(exc)) from exc


def _resolve_paths(source, fmt: str) -> dict[str, Optional[Path]]:
    ext = "csv" if fmt == "csv" else "json"
    if isinstance(source, Mapping):
        return {
            key: Path(p) if p is not None else None
            for key, p in (
                ("users", source.get("users")),
                ("tweets", source.get("tweets")),
                ("edges", source.get("edges")),
                ("neighbors", source.get("neighbors")),
            )
        }
    base = Path(source)
    found: dict[str, Optional[Path]] = {}
    for key in ("users", "tweets", "edges", "neighbors"):
        for candidate in (base / f"{key}.{ext}", base / f"{key}.jsonl"):
            if candidate.exists():
                found[key] = candidate
                break
        else:
            found[key] = None
    return found


def load_dataset(
    source,
    fmt: str = "csv",
    reference_time: Optional[datetime] = None,
    provenance: str = "",
) -> LabeledDataset:
    """Load and integrity-check a corpus from ``source``.

    ``source`` is a directory holding users/tweets/edges(.csv|.json) files
    (neighbors optional) or a mapping of those keys to explicit paths.
    When ``reference_time`` is not given it defaults to the newest timestamp
    in the corpus plus one day.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    paths = _resolve_paths(source, fmt)
    users_path = paths["users"]
    if users_path is None or not users_path.exists():
        raise EmptyCorpusError(f"no users file found under {source}")

    accounts: dict[str, Account] = {}
    for line, row in _RowReader(users_path, fmt, ["id", "screen_name", "created_at"]):
        uid = str(row["id"]).strip()
        if uid in accounts:
            raise DuplicateIdError(f"{users_path}: duplicate user_id {uid!r}")
        label = _optional(row.get("label"))
        if label is not None and label not in ("human", "fake"):
            raise MalformedRowError(str(users_path), line, "label", f"unknown label {label!r}")
        accounts[uid] = Account(
            user_id=uid,
            screen_name=str(row.get("screen_name", "")).strip(),
            name=str(row.get("name", "") or ""),
            created_at=_field(users_path, line, row, "created_at", parse_timestamp),
            followers_count=_field(users_path, line, row, "followers_count", _parse_int, 0),
            friends_count=_field(users_path, line, row, "friends_count", _parse_int, 0),
            statuses_count=_field(users_path, line, row, "statuses_count", _parse_int, 0),
            listed_count=_field(users_path, line, row, "listed_count", _parse_int, 0),
            favourites_count=_field(users_path, line, row, "favourites_count", _parse_int, 0),
            url=_optional(row.get("url")),
            location=_optional(row.get("location")),
            description=_optional(row.get("description")),
            default_profile_image=_field(
                users_path, line, row, "default_profile_image", _parse_bool, False
            ),
            profile_image_fingerprint=_optional(row.get("profile_image_hash")),
            label=label,
        )
    if not accounts:
        raise EmptyCorpusError(f"{users_path}: no accounts")

    tweets: dict[str, list[Tweet]] = {uid: [] for uid in accounts}
    tweets_path = paths["tweets"]
    if tweets_path is not None and tweets_path.exists():
        seen_tweets: set[str] = set()
        dangling: list[str] = []
        for line, row in _RowReader(tweets_path, fmt, ["id", "user_id", "created_at"]):
            tid = str(row["id"]).strip()
            if tid in seen_tweets:
                raise DuplicateIdError(f"{tweets_path}: duplicate tweet id {tid!r}")
            seen_tweets.add(tid)
            uid = str(row["user_id"]).strip()
            if uid not in accounts:
                dangling.append(tid)
                continue
            text = str(row.get("text", "") or "")
            derived = count_entities(text)
            entity = []
            for i, column in enumerate(("num_hashtags", "num_mentions", "num_urls")):
                raw = row.get(column)
                if raw is None or not str(raw).strip():
                    entity.append(derived[i])
                else:
                    entity.append(_field(tweets_path, line, row, column, _parse_int))
            tweets[uid].append(
                Tweet(
                    tweet_id=tid,
                    user_id=uid,
                    created_at=_field(tweets_path, line, row, "created_at", parse_timestamp),
                    text=text,
                    source=str(row.get("source", "") or ""),
                    is_retweet=_field(tweets_path, line, row, "is_retweet", _parse_bool, False),
                    retweet_count=_field(tweets_path, line, row, "retweet_count", _parse_int, 0),
                    is_geolocalized=_field(tweets_path, line, row, "geo", _parse_bool, False),
                    num_hashtags=entity[0],
                    num_mentions=entity[1],
                    num_urls=entity[2],
                )
            )
        if dangling:
            raise DanglingReferenceError(
                f"{tweets_path}: tweets reference unknown accounts (tweet ids "
                f"{', '.join(dangling[:10])})"
            )

    neighbor_summaries: dict[str, NeighborSummary] = {}
    neighbors_path = paths["neighbors"]
    if neighbors_path is not None and neighbors_path.exists():
        for line, row in _RowReader(neighbors_path, fmt, NEIGHBOR_COLUMNS):
            nid = str(row["id"]).strip()
            if nid in neighbor_summaries:
                raise DuplicateIdError(f"{neighbors_path}: duplicate neighbor id {nid!r}")
            neighbor_summaries[nid] = NeighborSummary(
                followers_count=_field(neighbors_path, line, row, "followers_count", _parse_int),
                statuses_count=_field(neighbors_path, line, row, "statuses_count", _parse_int),
            )

    edges: list[tuple[str, str]] = []
    edges_path = paths["edges"]
    if edges_path is not None and edges_path.exists():
        seen_edges: set[tuple[str, str]] = set()
        for line, row in _RowReader(edges_path, fmt, EDGE_COLUMNS):
            src = str(row["follower_id"]).strip()
            dst = str(row["followed_id"]).strip()
            if src == dst:
                raise MalformedRowError(str(edges_path), line, "followed_id", "self-loop")
            if (src, dst) in seen_edges:
                raise MalformedRowError(str(edges_path), line, "followed_id", "duplicate edge")
            seen_edges.add((src, dst))
            edges.append((src, dst))

    graph = RelationshipGraph(edges, neighbor_summaries)
    if reference_time is None:
        newest = max(
            [a.created_at for a in accounts.values()]
            + [t.created_at for rows in tweets.values() for t in rows]
        )
        reference_time = newest + timedelta(days=1)
    dataset = LabeledDataset(
        accounts=accounts,
        tweets={uid: tuple(rows) for uid, rows in tweets.items()},
        graph=graph,
        reference_time=utc(reference_time),
        provenance=provenance or str(source),
    )
    # friends must be resolvable for every dataset account
    unresolved_friends = sorted(
        {
            friend
            for uid in dataset.accounts
            for friend in graph.friends_of(uid)
            if graph.stats_for(friend) is None
        }
    )
    if unresolved_friends:
        raise DanglingReferenceError(
            "edges reference friends with no account and no neighbor summary: "
            + ", ".join(unresolved_friends[:10])
        )
    return dataset


def _bool_cell(value: bool) -> str:
    return "1" if value else "0"


def _account_row(a: Account) -> dict[str, str]:
    return {
        "id": a.user_id,
        "screen_name": a.screen_name,
        "name": a.name,
        "created_at": format_timestamp(a.created_at),
        "followers_count": str(a.followers_count),
        "friends_count": str(a.friends_count),
        "statuses_count": str(a.statuses_count),
        "listed_count": str(a.listed_count),
        "favourites_count": str(a.favourites_count),
        "url": a.url or "",
        "location": a.location or "",
        "description": a.description or "",
        "default_profile_image": _bool_cell(a.default_profile_image),
        "profile_image_hash": a.profile_image_fingerprint or "",
        "label": a.label or "",
    }


def _tweet_row(t: Tweet) -> dict[str, str]:
    return {
        "id": t.tweet_id,
        "user_id": t.user_id,
        "created_at": format_timestamp(t.created_at),
        "text": t.text,
        "source": t.source,
        "is_retweet": _bool_cell(t.is_retweet),
        "retweet_count": str(t.retweet_count),
        "geo": _bool_cell(t.is_geolocalized),
        "num_hashtags": str(t.num_hashtags),
        "num_mentions": str(t.num_mentions),
        "num_urls": str(t.num_urls),
    }


def save_dataset(dataset: LabeledDataset, out_dir, fmt: str = "csv") -> dict[str, Path]:
    """Write the corpus in a deterministic order; returns the written paths."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ext = "csv" if fmt == "csv" else "json"
    written: dict[str, Path] = {}

    tables: list[tuple[str, list[str], list[dict[str, str]]]] = []
    tables.append(
        ("users", USER_COLUMNS, [_account_row(a) for a in dataset.accounts.values()])
    )
    if dataset.tweets is not None:
        rows = [
            _tweet_row(t)
            for uid in dataset.accounts
            for t in sorted(dataset.tweets.get(uid, ()), key=lambda t: (t.created_at, t.tweet_id))
        ]
        tables.append(("tweets", TWEET_COLUMNS, rows))
    if dataset.graph is not None:
        edge_rows = [
            {"follower_id": s, "followed_id": d} for s, d in sorted(dataset.graph.edges)
        ]
        tables.append(("edges", EDGE_COLUMNS, edge_rows))
        neighbor_rows = [
            {
                "id": nid,
                "followers_count": str(summary.followers_count),
                "statuses_count": str(summary.statuses_count),
            }
            for nid, summary in sorted(dataset.graph.neighbor_summaries.items())
        ]
        if neighbor_rows:
            tables.append(("neighbors", NEIGHBOR_COLUMNS, neighbor_rows))

    for name, columns, rows in tables:
        path = out / f"{name}.{ext}"
        if fmt == "csv":
            with open(path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
                writer.writeheader()
                writer.writerows(rows)
        else:
            with open(path, "w", encoding="utf-8") as fh:
                for row in rows:
                    fh.write(json.dumps(row, sort_keys=True) + "\n")
        written[name] = path
    return written
