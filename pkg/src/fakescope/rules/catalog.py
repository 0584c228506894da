"""The three rule sets and the single-rule evaluator.

Rule directions: the 22 scoring rules treat satisfaction as human behavior;
the blogger signals and the fake-follower checks treat satisfaction as
fake/bot behavior. Rules never mutate state and are deterministic given the
immutable context.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..corpus.errors import InsufficientDataError
from ..corpus.model import is_web_source, normalize_source, strip_urls
from .context import DUPLICATE_PICTURE_MIN, AccountContext

CC = "CC"
SOS = "SOS"
SB = "SB"

MEANS_HUMAN = "satisfied-means-human"
MEANS_FAKE = "satisfied-means-fake"

PUNCTUATION = set(".,;:!?")

#: x/0 with a positive numerator maps to this cap so ratios stay finite.
RATIO_CAP = 1e9

SECONDS_PER_DAY = 86400.0
TWO_MONTHS_DAYS = 60.0


def capped_ratio(numerator: float, denominator: float) -> float:
    if denominator > 0:
        return numerator / denominator
    return 0.0 if numerator == 0 else RATIO_CAP


@dataclass(frozen=True)
class RuleId:
    ruleset: str
    index: int

    def __post_init__(self):
        if (self.ruleset, self.index) not in RULES:
            raise KeyError(f"unknown rule {self.ruleset} {self.index}")

    @property
    def direction(self) -> str:
        return MEANS_HUMAN if self.ruleset == CC else MEANS_FAKE

    def __str__(self) -> str:
        return f"{self.ruleset}-{self.index:02d}"


@dataclass(frozen=True)
class RuleOutcome:
    rule: RuleId
    satisfied: bool
    attribute_value: Optional[float] = None


@dataclass(frozen=True)
class RuleDef:
    ruleset: str
    index: int
    description: str
    needs_timeline: bool
    needs_aggregates: bool
    fn: Callable[[AccountContext], tuple[bool, Optional[float]]]


def _timeline(ctx: AccountContext):
    if ctx.tweets is None:
        raise InsufficientDataError(
            f"rule needs the timeline of {ctx.account.user_id}, but tweets were not loaded"
        )
    return ctx.tweets


def _count_and_flag(values) -> tuple[bool, float]:
    count = sum(1 for v in values if v)
    return count > 0, float(count)


def account_age_days(ctx: AccountContext) -> float:
    return (ctx.reference_time - ctx.account.created_at).total_seconds() / SECONDS_PER_DAY


def has_punctuation(text: str) -> bool:
    return any(ch in PUNCTUATION for ch in text)


def has_content_beyond_urls(text: str) -> bool:
    return bool(strip_urls(text).strip())


# --- scoring rule set (satisfaction means human behavior) -------------------


def _cc_has_name(ctx):
    return bool(ctx.account.name.strip()), None


def _cc_has_image(ctx):
    return not ctx.account.default_profile_image, None


def _cc_has_address(ctx):
    return bool((ctx.account.location or "").strip()), None


def _cc_has_bio(ctx):
    return bool((ctx.account.description or "").strip()), None


def _cc_followers_30(ctx):
    return ctx.account.followers_count >= 30, float(ctx.account.followers_count)


def _cc_in_list(ctx):
    return ctx.account.listed_count >= 1, float(ctx.account.listed_count)


def _cc_tweets_50(ctx):
    return ctx.account.statuses_count >= 50, float(ctx.account.statuses_count)


def _cc_geo(ctx):
    return _count_and_flag(t.is_geolocalized for t in _timeline(ctx))


def _cc_profile_url(ctx):
    return bool((ctx.account.url or "").strip()), None


def _cc_favourites(ctx):
    return ctx.account.favourites_count >= 1, float(ctx.account.favourites_count)


def _cc_punctuation(ctx):
    tweets = _timeline(ctx)
    in_bio = has_punctuation(ctx.account.description or "")
    with_punct = sum(1 for t in tweets if has_punctuation(t.text))
    return in_bio or with_punct > 0, float(with_punct)


def _cc_hashtag(ctx):
    return _count_and_flag(t.num_hashtags >= 1 for t in _timeline(ctx))


def _source_rule(keyword: str):
    def fn(ctx):
        return _count_and_flag(
            keyword in normalize_source(t.source) for t in _timeline(ctx)
        )

    return fn


def _cc_web(ctx):
    return _count_and_flag(is_web_source(t.source) for t in _timeline(ctx))


def _cc_mention(ctx):
    return _count_and_flag(t.num_mentions >= 1 for t in _timeline(ctx))


def _cc_follower_friend_balance(ctx):
    return 2 * ctx.account.followers_count >= ctx.account.friends_count, None


def _cc_not_only_urls(ctx):
    return _count_and_flag(has_content_beyond_urls(t.text) for t in _timeline(ctx))


def _cc_retweeted(ctx):
    return _count_and_flag(t.retweet_count >= 1 for t in _timeline(ctx))


def _cc_clients(ctx):
    sources = {normalize_source(t.source) for t in _timeline(ctx)}
    return len(sources) >= 2, float(len(sources))


# --- blogger signals (satisfaction means bot behavior) ----------------------


def _sos_bot_in_bio(ctx):
    words = (ctx.account.description or "").lower().split()
    return any(w.strip("".join(PUNCTUATION)) == "bot" for w in words), None


def _sos_friends_followers_100(ctx):
    ratio = capped_ratio(ctx.account.friends_count, ctx.account.followers_count)
    return ratio >= 100.0, ratio


def _sos_same_sentence(ctx):
    window = _timeline(ctx)[:20]
    groups: dict[str, list] = {}
    for t in window:
        groups.setdefault(t.text.strip(), []).append(t)
    for text, members in groups.items():
        if text and len(members) >= 2 and all(t.num_mentions >= 1 for t in members):
            return True, None
    return False, None


def _sos_duplicate_picture(ctx):
    if ctx.fingerprint_counts is None:
        raise InsufficientDataError(
            "duplicate-picture rule needs dataset-level fingerprint counts"
        )
    fp = ctx.account.profile_image_fingerprint
    count = ctx.fingerprint_counts.get(fp, 0) if fp else 0
    return count >= DUPLICATE_PICTURE_MIN, None


def _sos_from_api(ctx):
    return _count_and_flag(t.from_api for t in _timeline(ctx))


# --- fake-follower checks (satisfaction means fake behavior) ----------------


def _sb_friends_followers_50(ctx):
    ratio = capped_ratio(ctx.account.friends_count, ctx.account.followers_count)
    return ratio >= 50.0, ratio


def _sb_spam_phrases(ctx):
    tweets = _timeline(ctx)
    if not tweets:
        return False, 0.0
    phrases = tuple(p.lower() for p in ctx.spam_phrases)
    hits = sum(1 for t in tweets if any(p in t.text.lower() for p in phrases))
    fraction = hits / len(tweets)
    return fraction > 0.30, fraction


def _sb_repeated_tweets(ctx):
    counts: dict[str, int] = {}
    for t in _timeline(ctx):
        text = t.text.strip()
        if text:
            counts[text] = counts.get(text, 0) + 1
    top = max(counts.values(), default=0)
    return top > 3, float(top)


def _sb_mostly_retweets(ctx):
    tweets = _timeline(ctx)
    if not tweets:
        return False, 0.0
    fraction = sum(1 for t in tweets if t.is_retweet) / len(tweets)
    return fraction > 0.90, fraction


def _sb_mostly_links(ctx):
    tweets = _timeline(ctx)
    if not tweets:
        return False, 0.0
    fraction = sum(1 for t in tweets if t.num_urls >= 1) / len(tweets)
    return fraction > 0.90, fraction


def _sb_never_tweeted(ctx):
    return ctx.account.statuses_count == 0, float(ctx.account.statuses_count)


def _sb_default_image_two_months(ctx):
    old = account_age_days(ctx) > TWO_MONTHS_DAYS
    return old and ctx.account.default_profile_image, None


def _sb_empty_profile_many_friends(ctx):
    a = ctx.account
    empty = not (a.description or "").strip() and not (a.location or "").strip()
    return empty and a.friends_count > 100, None


def _build_rules() -> dict[tuple[str, int], RuleDef]:
    cc = [
        ("profile has name", False, _cc_has_name),
        ("profile has image", False, _cc_has_image),
        ("profile has address", False, _cc_has_address),
        ("profile has biography", False, _cc_has_bio),
        ("at least 30 followers", False, _cc_followers_30),
        ("belongs to a list", False, _cc_in_list),
        ("at least 50 tweets", False, _cc_tweets_50),
        ("geo-localized tweet", True, _cc_geo),
        ("URL in profile", False, _cc_profile_url),
        ("included in favorites", False, _cc_favourites),
        ("punctuation in tweets or biography", True, _cc_punctuation),
        ("used a hashtag", True, _cc_hashtag),
        ("logged in from iPhone", True, _source_rule("iphone")),
        ("logged in from Android", True, _source_rule("android")),
        ("connected with Foursquare", True, _source_rule("foursquare")),
        ("connected with Instagram", True, _source_rule("instagram")),
        ("used the website to tweet", True, _cc_web),
        ("mentioned another user", True, _cc_mention),
        ("2*followers >= friends", False, _cc_follower_friend_balance),
        ("content beyond plain URLs", True, _cc_not_only_urls),
        ("has a retweeted tweet", True, _cc_retweeted),
        ("used different clients", True, _cc_clients),
    ]
    sos = [
        ("'bot' in biography", False, False, _sos_bot_in_bio),
        ("friends/followers around 100:1", False, False, _sos_friends_followers_100),
        ("same sentence to many accounts", True, False, _sos_same_sentence),
        ("duplicate profile picture", False, True, _sos_duplicate_picture),
        ("tweets from API", True, False, _sos_from_api),
    ]
    sb = [
        ("friends/followers 50:1 or more", False, _sb_friends_followers_50),
        ("over 30% spam phrases", True, _sb_spam_phrases),
        ("same tweet repeated over 3 times", True, _sb_repeated_tweets),
        ("over 90% retweets", True, _sb_mostly_retweets),
        ("over 90% link tweets", True, _sb_mostly_links),
        ("never tweeted", False, _sb_never_tweeted),
        ("default image after two months", False, _sb_default_image_two_months),
        ("no bio, no location, over 100 friends", False, _sb_empty_profile_many_friends),
    ]
    rules: dict[tuple[str, int], RuleDef] = {}
    for i, (desc, needs_tl, fn) in enumerate(cc, start=1):
        rules[(CC, i)] = RuleDef(CC, i, desc, needs_tl, False, fn)
    for i, (desc, needs_tl, needs_agg, fn) in enumerate(sos, start=1):
        rules[(SOS, i)] = RuleDef(SOS, i, desc, needs_tl, needs_agg, fn)
    for i, (desc, needs_tl, fn) in enumerate(sb, start=1):
        rules[(SB, i)] = RuleDef(SB, i, desc, needs_tl, False, fn)
    return rules


RULES: dict[tuple[str, int], RuleDef] = _build_rules()

ALL_RULE_IDS: tuple[RuleId, ...] = tuple(
    RuleId(ruleset, index)
    for ruleset in (CC, SOS, SB)
    for (rs, index) in sorted(k for k in RULES if k[0] == ruleset)
)


def rule_ids(ruleset: str) -> tuple[RuleId, ...]:
    return tuple(r for r in ALL_RULE_IDS if r.ruleset == ruleset)


def evaluate_rule(rule: RuleId, ctx: AccountContext) -> RuleOutcome:
    rdef = RULES[(rule.ruleset, rule.index)]
    satisfied, attribute = rdef.fn(ctx)
    return RuleOutcome(rule=rule, satisfied=bool(satisfied), attribute_value=attribute)


def describe(rule: RuleId) -> str:
    return RULES[(rule.ruleset, rule.index)].description
