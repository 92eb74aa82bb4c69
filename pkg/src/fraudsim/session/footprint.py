"""The 17-metric digital footprint and the fold that builds it from events.

Metric order is fixed and is the column order of every feature matrix built
from footprints. Negative-sentiment reading time stays in the event log but is
deliberately absent from the footprint, which mirrors the recorded-metric list
one-for-one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

import numpy as np

from .events import EventKind, SessionEvent

METRIC_NAMES = [
    "age",
    "t_fraud_stock_page",
    "t_real_stock_page",
    "t_fake_stock_page",
    "t_market_page",
    "t_portfolio_page",
    "t_news_page",
    "t_read_positive_news",
    "t_read_neutral_news",
    "n_fake_bought",
    "n_fraud_bought",
    "n_real_bought",
    "n_frauds_reported",
    "n_articles_read",
    "n_transactions",
    "n_untrusted_read",
    "n_trusted_read",
]

COUNT_METRICS = [m for m in METRIC_NAMES if m.startswith("n_")]
DURATION_METRICS = [m for m in METRIC_NAMES if m.startswith("t_")]

# Per-visit dwell cap (seconds), bounds idle inflation from abandoned tabs.
DEFAULT_DWELL_CAP = 1800.0


class TelemetryError(ValueError):
    """Raised when Start/End events cannot be paired."""

    def __init__(self, orphan_ids: list):
        self.orphan_ids = orphan_ids
        super().__init__(f"unmatched telemetry events: {orphan_ids}")


@dataclass
class DigitalFootprint:
    age: float = 0.0
    t_fraud_stock_page: float = 0.0
    t_real_stock_page: float = 0.0
    t_fake_stock_page: float = 0.0
    t_market_page: float = 0.0
    t_portfolio_page: float = 0.0
    t_news_page: float = 0.0
    t_read_positive_news: float = 0.0
    t_read_neutral_news: float = 0.0
    n_fake_bought: int = 0
    n_fraud_bought: int = 0
    n_real_bought: int = 0
    n_frauds_reported: int = 0
    n_articles_read: int = 0
    n_transactions: int = 0
    n_untrusted_read: int = 0
    n_trusted_read: int = 0
    label: str | None = None
    session_id: str | None = None

    def vector(self) -> np.ndarray:
        return np.array([float(getattr(self, m)) for m in METRIC_NAMES], dtype=np.float64)

    def to_dict(self) -> dict:
        d = {m: getattr(self, m) for m in METRIC_NAMES}
        d["label"] = self.label
        d["session_id"] = self.session_id
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "DigitalFootprint":
        missing = [m for m in METRIC_NAMES if m not in d or d[m] is None]
        if missing:
            raise KeyError(f"footprint record missing metric(s): {missing}")
        kwargs = {}
        for m in METRIC_NAMES:
            kwargs[m] = int(d[m]) if m in COUNT_METRICS else float(d[m])
        return cls(label=d.get("label"), session_id=d.get("session_id"), **kwargs)

    def validate(self) -> None:
        for m in METRIC_NAMES:
            v = getattr(self, m)
            if v < 0:
                raise ValueError(f"{m} is negative: {v}")
        if self.n_articles_read != self.n_untrusted_read + self.n_trusted_read:
            raise ValueError("n_articles_read != n_untrusted_read + n_trusted_read")
        bought = self.n_fake_bought + self.n_fraud_bought + self.n_real_bought
        if self.n_transactions < bought:
            raise ValueError("n_transactions below total buy count")


assert len(METRIC_NAMES) == 17
assert [f.name for f in fields(DigitalFootprint)][:17] == METRIC_NAMES


_PAGE_DWELL_FIELD = {
    "market": "t_market_page",
    "portfolio": "t_portfolio_page",
    "news": "t_news_page",
}
_STOCK_DWELL_FIELD = {
    "Fraud": "t_fraud_stock_page",
    "Real": "t_real_stock_page",
    "Fake": "t_fake_stock_page",
}
_READ_DWELL_FIELD = {
    "Positive": "t_read_positive_news",
    "Neutral": "t_read_neutral_news",
    # Negative read time is logged but not a footprint metric.
}
_BUY_COUNT_FIELD = {
    "Fake": "n_fake_bought",
    "Fraud": "n_fraud_bought",
    "Real": "n_real_bought",
}


@dataclass
class FootprintFolder:
    """Streaming fold over session events; fold_footprint is feed-all + result.

    Dwell accrues when a Leave/End pairs with the latest open Start of the same
    id; a dangling Start (page still open mid-session) contributes nothing yet.
    An End with no open Start is an orphan and raises TelemetryError.
    """

    user_age: float
    dwell_cap: float = DEFAULT_DWELL_CAP
    session_id: str | None = None
    _fp: DigitalFootprint = field(init=False)
    _open: dict = field(default_factory=dict, init=False)
    _seen: int = field(default=0, init=False)

    def __post_init__(self):
        self._fp = DigitalFootprint(age=float(self.user_age), session_id=self.session_id)

    def _page_key(self, ev: SessionEvent):
        page = ev.payload.get("page", "")
        return ("page", page, ev.payload.get("stock_id") or "")

    def _bump_dwell(self, fieldname: str | None, start: float, end: float) -> None:
        if fieldname is None:
            return
        dwell = min(max(end - start, 0.0), self.dwell_cap)
        setattr(self._fp, fieldname, getattr(self._fp, fieldname) + dwell)

    def feed(self, ev: SessionEvent) -> None:
        self._seen += 1
        fp = self._fp
        kind = ev.kind
        if kind is EventKind.PAGE_ENTER:
            self._open.setdefault(self._page_key(ev), []).append(ev.wall_time)
        elif kind is EventKind.PAGE_LEAVE:
            stack = self._open.get(self._page_key(ev))
            if not stack:
                raise TelemetryError([ev.event_id if ev.event_id is not None else self._seen - 1])
            start = stack.pop()
            page = ev.payload.get("page", "")
            if page == "stock":
                target = _STOCK_DWELL_FIELD.get(ev.payload.get("authenticity", ""))
            else:
                target = _PAGE_DWELL_FIELD.get(page)
            self._bump_dwell(target, start, ev.wall_time)
        elif kind is EventKind.READ_ARTICLE_START:
            key = ("article", ev.payload.get("article_id", ""))
            self._open.setdefault(key, []).append(ev.wall_time)
        elif kind is EventKind.READ_ARTICLE_END:
            key = ("article", ev.payload.get("article_id", ""))
            stack = self._open.get(key)
            if not stack:
                raise TelemetryError([ev.event_id if ev.event_id is not None else self._seen - 1])
            start = stack.pop()
            self._bump_dwell(_READ_DWELL_FIELD.get(ev.payload.get("sentiment", "")), start, ev.wall_time)
            if ev.payload.get("source_trust") == "Untrusted":
                fp.n_untrusted_read += 1
            else:
                fp.n_trusted_read += 1
            fp.n_articles_read = fp.n_untrusted_read + fp.n_trusted_read
        elif kind is EventKind.BUY:
            fp.n_transactions += 1
            target = _BUY_COUNT_FIELD.get(ev.payload.get("authenticity", ""))
            if target:
                setattr(fp, target, getattr(fp, target) + 1)
        elif kind is EventKind.SELL:
            fp.n_transactions += 1
        elif kind is EventKind.REPORT_FRAUD:
            fp.n_frauds_reported += 1
        # ChatReply is logged but feeds no footprint metric.

    def result(self) -> DigitalFootprint:
        out = DigitalFootprint(**{m: getattr(self._fp, m) for m in METRIC_NAMES})
        out.session_id = self.session_id
        out.label = self._fp.label
        return out


def fold_footprint(
    events: list[SessionEvent],
    user_age: float,
    dwell_cap: float = DEFAULT_DWELL_CAP,
    session_id: str | None = None,
) -> DigitalFootprint:
    """Fold an ordered event list into a DigitalFootprint.

    Pure and idempotent: the same events always give the same footprint, and
    folding a prefix then the suffix equals folding the whole list.
    """
    folder = FootprintFolder(user_age=user_age, dwell_cap=dwell_cap, session_id=session_id)
    for ev in events:
        folder.feed(ev)
    return folder.result()
