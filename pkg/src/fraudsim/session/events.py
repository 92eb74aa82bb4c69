"""Session events and the append-only line-delimited event log.

The event log is the interchange format between the platform, the
personalization engine and the analytics engine: one JSON record per line,
first line a header record carrying the schema version and session metadata.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable

EVENT_LOG_SCHEMA = "event-log/v1"


class EventKind(str, Enum):
    PAGE_ENTER = "PageEnter"
    PAGE_LEAVE = "PageLeave"
    BUY = "Buy"
    SELL = "Sell"
    READ_ARTICLE_START = "ReadArticleStart"
    READ_ARTICLE_END = "ReadArticleEnd"
    REPORT_FRAUD = "ReportFraud"
    CHAT_REPLY = "ChatReply"


@dataclass(frozen=True)
class SessionEvent:
    """One recorded platform interaction.

    payload is kind-specific:
      PageEnter/PageLeave   page, stock_id + authenticity for stock pages
      ReadArticle*          article_id, sentiment, source_trust, stock_id
      Buy/Sell              stock_id, shares, price_cents, authenticity,
                            realized_pnl_cents (Sell)
      ReportFraud           stock_id, authenticity
      ChatReply             message_id, reply
    wall_time is seconds; only deltas between paired events are interpreted.
    """

    session_id: str
    tick: int
    wall_time: float
    kind: EventKind
    payload: dict = field(default_factory=dict)
    event_id: int | None = None

    def to_record(self) -> dict:
        return {
            "event_id": self.event_id,
            "session_id": self.session_id,
            "tick": self.tick,
            "wall_time": self.wall_time,
            "kind": self.kind.value,
            "payload": self.payload,
        }

    @classmethod
    def from_record(cls, d: dict) -> "SessionEvent":
        return cls(
            session_id=d["session_id"],
            tick=int(d["tick"]),
            wall_time=float(d["wall_time"]),
            kind=EventKind(d["kind"]),
            payload=dict(d.get("payload") or {}),
            event_id=d.get("event_id"),
        )


def write_event_log(path: str | Path, header: dict, events: Iterable[SessionEvent]) -> None:
    """Write a complete event log: header line then one record per event."""
    head = {"schema": EVENT_LOG_SCHEMA, **header}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(head) + "\n")
        for ev in events:
            fh.write(json.dumps(ev.to_record()) + "\n")


def read_event_log(path: str | Path) -> tuple[dict, list[SessionEvent]]:
    """Read an event log back as (header, events)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"empty event log: {path}")
    header = json.loads(lines[0])
    if header.get("schema") != EVENT_LOG_SCHEMA:
        raise ValueError(f"unsupported event log schema: {header.get('schema')!r}")
    events = [SessionEvent.from_record(json.loads(ln)) for ln in lines[1:]]
    return header, events
