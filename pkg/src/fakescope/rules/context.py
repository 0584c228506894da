"""Per-account evaluation context for the rule catalog."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Iterator, Optional

from ..corpus.model import Account, LabeledDataset, Tweet

DEFAULT_SPAM_PHRASES = ("diet", "make money", "work from home")

#: Accounts sharing one picture fingerprint with at least this many dataset
#: accounts (themselves included) count as using a duplicate picture.
DUPLICATE_PICTURE_MIN = 3


@dataclass(frozen=True)
class AccountContext:
    """Everything a rule may look at for one account.

    ``tweets`` is None when the timeline was withheld (not merely empty);
    ``fingerprint_counts`` maps picture fingerprints to how many dataset
    accounts carry them, and is None when dataset-level aggregates are
    unavailable.
    """

    account: Account
    tweets: Optional[tuple[Tweet, ...]]
    reference_time: datetime
    fingerprint_counts: Optional[dict[str, int]] = None
    spam_phrases: tuple[str, ...] = DEFAULT_SPAM_PHRASES


def picture_counts(dataset: LabeledDataset) -> dict[str, int]:
    counts: dict[str, int] = {}
    for account in dataset.accounts.values():
        fp = account.profile_image_fingerprint
        if fp:
            counts[fp] = counts.get(fp, 0) + 1
    return counts


def build_context(
    dataset: LabeledDataset,
    user_id: str,
    fingerprint_counts: Optional[dict[str, int]] = None,
    spam_phrases: tuple[str, ...] = DEFAULT_SPAM_PHRASES,
) -> AccountContext:
    if fingerprint_counts is None:
        fingerprint_counts = picture_counts(dataset)
    return AccountContext(
        account=dataset.accounts[user_id],
        tweets=None if dataset.tweets is None else dataset.timeline(user_id),
        reference_time=dataset.reference_time,
        fingerprint_counts=fingerprint_counts,
        spam_phrases=spam_phrases,
    )


def iter_contexts(
    dataset: LabeledDataset, spam_phrases: tuple[str, ...] = DEFAULT_SPAM_PHRASES
) -> Iterator[AccountContext]:
    """Contexts for every account, computing dataset aggregates once."""
    counts = picture_counts(dataset)
    for uid in dataset.accounts:
        yield build_context(dataset, uid, counts, spam_phrases)
