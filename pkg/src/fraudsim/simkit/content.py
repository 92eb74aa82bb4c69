"""News articles and scripted chat content published into a scenario."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class ScamTag(str, Enum):
    PENNY_STOCK_PUMP_AND_DUMP = "PennyStockPumpAndDump"
    PYRAMID_SCHEME = "PyramidScheme"


class Sentiment(str, Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    NEUTRAL = "Neutral"


class SourceTrust(str, Enum):
    TRUSTED = "Trusted"
    UNTRUSTED = "Untrusted"


class ChatAuthor(str, Enum):
    MASCOT = "Mascot"
    RECRUITER = "Recruiter"
    USER = "User"


@dataclass(frozen=True)
class NewsArticle:
    id: str
    stock_id: str
    headline: str
    body: str
    sentiment: Sentiment
    source_trust: SourceTrust
    publish_tick: int
    trap_tag: ScamTag | None = None

    def __post_init__(self):
        # Untrusted scam bait must be attributable to the trap it sets.
        if self.source_trust is SourceTrust.UNTRUSTED and self.trap_tag is None:
            raise ValueError(f"untrusted article {self.id} missing trap_tag")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "stock_id": self.stock_id,
            "headline": self.headline,
            "body": self.body,
            "sentiment": self.sentiment.value,
            "source_trust": self.source_trust.value,
            "publish_tick": self.publish_tick,
            "trap_tag": self.trap_tag.value if self.trap_tag else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NewsArticle":
        return cls(
            id=d["id"],
            stock_id=d["stock_id"],
            headline=d["headline"],
            body=d["body"],
            sentiment=Sentiment(d["sentiment"]),
            source_trust=SourceTrust(d["source_trust"]),
            publish_tick=d["publish_tick"],
            trap_tag=ScamTag(d["trap_tag"]) if d.get("trap_tag") else None,
        )


@dataclass(frozen=True)
class ChatMessage:
    id: str
    author: ChatAuthor
    text: str
    publish_tick: int = 0
    trap_tag: ScamTag | None = None
    reply_options: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.author is ChatAuthor.RECRUITER and self.trap_tag is not ScamTag.PYRAMID_SCHEME:
            raise ValueError(f"recruiter message {self.id} must carry the PyramidScheme tag")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "author": self.author.value,
            "text": self.text,
            "publish_tick": self.publish_tick,
            "trap_tag": self.trap_tag.value if self.trap_tag else None,
            "reply_options": list(self.reply_options),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ChatMessage":
        return cls(
            id=d["id"],
            author=ChatAuthor(d["author"]),
            text=d["text"],
            publish_tick=d.get("publish_tick", 0),
            trap_tag=ScamTag(d["trap_tag"]) if d.get("trap_tag") else None,
            reply_options=tuple(d.get("reply_options", ())),
        )
