"""The platform service: sessions, telemetry ingest, trades, feedback, admin.

The append-only event log is the single source of truth: portfolios and
footprints are folds over it, which is what makes the replay invariant and
crash recovery work. Storage is pluggable; the default is one JSONL file per
session plus a manifest. The HTTP layer (api.py) and the headless bots
(bots.py) both drive this service, so they exercise the same code path.
"""

from __future__ import annotations

import json
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from ..analytics.cohort import default_cohort_spec, generate_cohort
from ..analytics.report import build_report
from ..personalize.feedback import select_resources
from ..personalize.pipeline import PipelineConfig, PipelineModel, build_training_table, predict_type, train_pipeline
from ..personalize.types import FeedbackBundle, KnowledgePool, default_knowledge_pool
from ..session.events import EVENT_LOG_SCHEMA, EventKind, SessionEvent
from ..session.footprint import DEFAULT_DWELL_CAP, DigitalFootprint, TelemetryError, fold_footprint
from ..session.portfolio import (
    DEFAULT_XP_RULES,
    Portfolio,
    TradeError,
    TradeValidationError,
    XpRules,
    award_xp,
    execute_trade,
)
from ..simkit.scenario import Scenario


class ApiError(Exception):
    """Service-level error carrying an HTTP status and a machine-readable code."""

    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(f"{code}: {message}")


def _not_found(what: str, key: str) -> ApiError:
    return ApiError(404, "NotFound", f"unknown {what}: {key}")


@dataclass
class ApiSession:
    session_id: str
    user_age: int
    scenario_id: str
    created_at: str
    current_tick: int = 0

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "user_age": self.user_age,
            "scenario_id": self.scenario_id,
            "created_at": self.created_at,
            "current_tick": self.current_tick,
        }


# Kinds the client may post directly; money-moving kinds go through their own
# endpoints so accounting stays server-authoritative.
CLIENT_KINDS = {
    EventKind.PAGE_ENTER,
    EventKind.PAGE_LEAVE,
    EventKind.READ_ARTICLE_START,
    EventKind.READ_ARTICLE_END,
    EventKind.CHAT_REPLY,
}

KNOWN_PAGES = {"market", "portfolio", "news", "analytics", "chat", "stock"}


class MemoryEventStore:
    """In-process store; used by bots and tests."""

    def __init__(self):
        self._meta: dict[str, dict] = {}
        self._events: dict[str, list[dict]] = {}

    def create(self, session_id: str, meta: dict) -> None:
        self._meta[session_id] = dict(meta)
        self._events[session_id] = []

    def append(self, session_id: str, record: dict) -> None:
        self._events[session_id].append(record)

    def records(self, session_id: str) -> list[dict]:
        return list(self._events[session_id])

    def sessions(self) -> dict[str, dict]:
        return {k: dict(v) for k, v in self._meta.items()}


class FileEventStore:
    """One append-only JSONL log per session plus a manifest of session meta."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.manifest_path = self.data_dir / "manifest.json"

    def _log_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.jsonl"

    def _read_manifest(self) -> dict:
        if not self.manifest_path.exists():
            return {}
        return json.loads(self.manifest_path.read_text(encoding="utf-8"))

    def _write_manifest(self, manifest: dict) -> None:
        tmp = self.manifest_path.with_suffix(".tmp")
        tmp.write_text(json.dumps(manifest, indent=2), encoding="utf-8")
        tmp.replace(self.manifest_path)

    def create(self, session_id: str, meta: dict) -> None:
        manifest = self._read_manifest()
        manifest[session_id] = dict(meta)
        self._write_manifest(manifest)
        header = {"schema": EVENT_LOG_SCHEMA, **meta}
        with open(self._log_path(session_id), "w", encoding="utf-8") as fh:
            fh.write(json.dumps(header) + "\n")

    def append(self, session_id: str, record: dict) -> None:
        with open(self._log_path(session_id), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record) + "\n")

    def records(self, session_id: str) -> list[dict]:
        path = self._log_path(session_id)
        if not path.exists():
            return []
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
        return [json.loads(ln) for ln in lines[1:]]  # skip header

    def sessions(self) -> dict[str, dict]:
        return self._read_manifest()


@dataclass
class _SessionState:
    api: ApiSession
    portfolio: Portfolio
    event_count: int = 0
    last_bundle: FeedbackBundle | None = None
    open_keys: dict = field(default_factory=dict)  # nesting state for validation


class PlatformService:
    def __init__(
        self,
        scenario: Scenario,
        store=None,
        pool: KnowledgePool | None = None,
        model: PipelineModel | None = None,
        clock=None,
        xp_rules: XpRules = DEFAULT_XP_RULES,
        dwell_cap: float = DEFAULT_DWELL_CAP,
        train_seed: int = 0,
        cohort_seed: int = 42,
    ):
        self.scenario = scenario
        self.store = store if store is not None else MemoryEventStore()
        self.pool = pool or default_knowledge_pool()
        self.model = model
        self.clock = clock or time.time
        self.xp_rules = xp_rules
        self.dwell_cap = dwell_cap
        self.train_seed = train_seed
        self.cohort_seed = cohort_seed
        self.current_tick = 0
        # Handle of the latest analytics report. The analytics engine hands
        # this to the personalization side, which does not consume it yet.
        self.last_report_id: str | None = None
        self._sessions: dict[str, _SessionState] = {}
        self._restore()

    # ----- persistence / recovery -------------------------------------------

    def _restore(self) -> None:
        """Rebuild in-memory session state by replaying stored logs."""
        for session_id, meta in self.store.sessions().items():
            api = ApiSession(
                session_id=session_id,
                user_age=meta["age"],
                scenario_id=meta.get("scenario_id", self.scenario.name),
                created_at=meta.get("created_at", ""),
                current_tick=self.current_tick,
            )
            state = _SessionState(api=api, portfolio=self._initial_portfolio())
            for record in self.store.records(session_id):
                ev = SessionEvent.from_record(record)
                self._apply_to_state(state, ev)
                state.event_count += 1
            self._sessions[session_id] = state
            self.current_tick = max(self.current_tick, meta.get("tick", 0))

    def _initial_portfolio(self) -> Portfolio:
        return Portfolio(
            cash_cents=self.scenario.initial_cash_cents,
            xp=self.scenario.initial_xp,
            level=1 + self.scenario.initial_xp // self.xp_rules.xp_per_level,
        )

    def _apply_to_state(self, state: _SessionState, ev: SessionEvent) -> None:
        """Replay one event into portfolio/XP state (folds are separate)."""
        if ev.kind in (EventKind.BUY, EventKind.SELL):
            stock = self.scenario.stock_by_id(ev.payload["stock_id"])
            portfolio, _ = execute_trade(
                state.portfolio, stock, ev.payload["side"], ev.payload["shares"], ev.tick
            )
            state.portfolio = award_xp(portfolio, ev, self.scenario, self.xp_rules)
        elif ev.kind is EventKind.REPORT_FRAUD:
            state.portfolio = award_xp(state.portfolio, ev, self.scenario, self.xp_rules)

    # ----- sessions -----------------------------------------------------------

    def _state(self, session_id: str) -> _SessionState:
        state = self._sessions.get(session_id)
        if state is None:
            raise _not_found("session", session_id)
        return state

    def create_session(self, age: int, session_id: str | None = None) -> dict:
        if not 0 < int(age) < 130:
            raise ApiError(400, "ValidationError", f"implausible age: {age}")
        session_id = session_id or uuid.uuid4().hex[:16]
        if session_id in self._sessions:
            raise ApiError(400, "ValidationError", f"session id already exists: {session_id}")
        created_at = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(int(self.clock())))
        meta = {
            "session_id": session_id,
            "age": int(age),
            "scenario_id": self.scenario.name,
            "created_at": created_at,
            "tick": self.current_tick,
        }
        self.store.create(session_id, meta)
        api = ApiSession(
            session_id=session_id,
            user_age=int(age),
            scenario_id=self.scenario.name,
            created_at=created_at,
            current_tick=self.current_tick,
        )
        self._sessions[session_id] = _SessionState(api=api, portfolio=self._initial_portfolio())
        return {"session": api.to_dict(), "portfolio": self.portfolio_view(session_id)}

    def advance(self, ticks: int = 1) -> int:
        if ticks < 1:
            raise ApiError(400, "ValidationError", f"ticks must be >= 1, got {ticks}")
        self.current_tick = min(self.current_tick + ticks, self.scenario.horizon)
        for state in self._sessions.values():
            state.api.current_tick = self.current_tick
        return self.current_tick

    # ----- market views -------------------------------------------------------

    def market_view(self) -> dict:
        tick = self.current_tick
        rows = []
        for s in self.scenario.stocks:
            price = s.price_cents(tick)
            prev = s.price_cents(tick - 1) if tick > 0 else price
            rows.append(
                {
                    "stock_id": s.id,
                    "ticker": s.ticker,
                    "name": s.name,
                    "sector": s.sector,
                    "price_cents": price,
                    "price": price / 100.0,
                    "change_cents": price - prev,
                    "delisted": s.is_delisted(tick),
                }
            )
        return {"tick": tick, "stocks": rows}

    def stock_view(self, stock_id: str) -> dict:
        stock = self.scenario.stock_by_id(stock_id)
        if stock is None:
            raise _not_found("stock", stock_id)
        tick = self.current_tick
        history = stock.price_history[: tick + 1]
        return {
            "stock_id": stock.id,
            "ticker": stock.ticker,
            "name": stock.name,
            "sector": stock.sector,
            "float_shares": stock.float_shares,
            "tick": tick,
            "price_cents": stock.price_cents(tick),
            "price": stock.price_cents(tick) / 100.0,
            "delisted": stock.is_delisted(tick),
            "price_history_cents": history,
        }

    def news_view(self) -> dict:
        tick = self.current_tick
        rows = []
        for a in self.scenario.articles_at_or_before(tick):
            rows.append(
                {
                    "article_id": a.id,
                    "stock_id": a.stock_id,
                    "headline": a.headline,
                    "body": a.body,
                    "sentiment": a.sentiment.value,
                    "source_trust": a.source_trust.value,
                    "publish_tick": a.publish_tick,
                }
            )
        return {"tick": tick, "articles": rows}

    def chat_view(self) -> dict:
        tick = self.current_tick
        rows = []
        for m in self.scenario.chat_at_or_before(tick):
            rows.append(
                {
                    "message_id": m.id,
                    "author": m.author.value,
                    "text": m.text,
                    "publish_tick": m.publish_tick,
                    "reply_options": list(m.reply_options),
                }
            )
        return {"tick": tick, "messages": rows}

    # ----- telemetry ingest ----------------------------------------------------

    def _enrich(self, session_id: str, record: dict) -> SessionEvent:
        try:
            kind = EventKind(record.get("kind"))
        except ValueError:
            raise ApiError(400, "ValidationError", f"unknown event kind {record.get('kind')!r}")
        if kind not in CLIENT_KINDS:
            raise ApiError(
                400, "ValidationError", f"{kind.value} events are server-generated; use the API"
            )
        payload = dict(record.get("payload") or {})
        tick = int(record.get("tick", self.current_tick))
        if not 0 <= tick <= self.scenario.horizon:
            raise ApiError(400, "ValidationError", f"tick {tick} outside scenario horizon")
        if kind in (EventKind.PAGE_ENTER, EventKind.PAGE_LEAVE):
            page = payload.get("page")
            if page not in KNOWN_PAGES:
                raise ApiError(400, "ValidationError", f"unknown page {page!r}")
            if page == "stock":
                stock = self.scenario.stock_by_id(payload.get("stock_id", ""))
                if stock is None:
                    raise _not_found("stock", str(payload.get("stock_id")))
                payload["authenticity"] = stock.authenticity.value
        elif kind in (EventKind.READ_ARTICLE_START, EventKind.READ_ARTICLE_END):
            article = self.scenario.article_by_id(payload.get("article_id", ""))
            if article is None:
                raise _not_found("article", str(payload.get("article_id")))
            payload["stock_id"] = article.stock_id
            payload["sentiment"] = article.sentiment.value
            payload["source_trust"] = article.source_trust.value
        elif kind is EventKind.CHAT_REPLY:
            message = next(
                (m for m in self.scenario.chat_script if m.id == payload.get("message_id")), None
            )
            if message is None:
                raise _not_found("chat message", str(payload.get("message_id")))
            if message.trap_tag is not None:
                payload["trap_tag"] = message.trap_tag.value
        return SessionEvent(
            session_id=session_id,
            tick=tick,
            wall_time=float(record.get("wall_time", 0.0)),
            kind=kind,
            payload=payload,
        )

    @staticmethod
    def _nesting_key(ev: SessionEvent):
        if ev.kind in (EventKind.PAGE_ENTER, EventKind.PAGE_LEAVE):
            return ("page", ev.payload.get("page", ""), ev.payload.get("stock_id") or "")
        if ev.kind in (EventKind.READ_ARTICLE_START, EventKind.READ_ARTICLE_END):
            return ("article", ev.payload.get("article_id", ""))
        return None

    def append_events(self, session_id: str, records: list[dict]) -> int:
        """Validate, enrich and persist a client event batch, atomically.

        The whole batch is checked against the session's nesting state before
        anything is written; an End without a matching open Start rejects the
        batch with a 422.
        """
        state = self._state(session_id)
        enriched = [self._enrich(session_id, r) for r in records]
        # dry-run nesting check
        open_copy = {k: list(v) for k, v in state.open_keys.items()}
        for i, ev in enumerate(enriched):
            key = self._nesting_key(ev)
            if key is None:
                continue
            if ev.kind in (EventKind.PAGE_ENTER, EventKind.READ_ARTICLE_START):
                open_copy.setdefault(key, []).append(i)
            else:
                stack = open_copy.get(key)
                if not stack:
                    raise ApiError(
                        422,
                        "TelemetryNestingError",
                        f"{ev.kind.value} at batch index {i} has no matching open start",
                    )
                stack.pop()
        # commit
        for ev in enriched:
            record = ev.to_record()
            record["event_id"] = state.event_count
            self.store.append(session_id, record)
            state.event_count += 1
            key = self._nesting_key(ev)
            if key is not None:
                if ev.kind in (EventKind.PAGE_ENTER, EventKind.READ_ARTICLE_START):
                    state.open_keys.setdefault(key, []).append(ev.wall_time)
                else:
                    state.open_keys[key].pop()
        return len(enriched)

    def _append_server_event(self, state: _SessionState, kind: EventKind, payload: dict, wall_time: float | None) -> SessionEvent:
        ev = SessionEvent(
            session_id=state.api.session_id,
            tick=self.current_tick,
            wall_time=float(self.clock() if wall_time is None else wall_time),
            kind=kind,
            payload=payload,
            event_id=state.event_count,
        )
        self.store.append(state.api.session_id, ev.to_record())
        state.event_count += 1
        return ev

    # ----- trades and reports ---------------------------------------------------

    def trade(self, session_id: str, stock_id: str, side: str, shares: int, wall_time: float | None = None) -> dict:
        state = self._state(session_id)
        stock = self.scenario.stock_by_id(stock_id)
        if stock is None:
            raise _not_found("stock", stock_id)
        try:
            portfolio, payload = execute_trade(state.portfolio, stock, side, int(shares), self.current_tick)
        except TradeValidationError as exc:
            raise ApiError(400, exc.code, str(exc))
        except TradeError as exc:
            raise ApiError(409, exc.code, str(exc))
        ev = self._append_server_event(state, EventKind(side), payload, wall_time)
        state.portfolio = award_xp(portfolio, ev, self.scenario, self.xp_rules)
        return {
            "trade": payload,
            "tick": self.current_tick,
            "portfolio": self.portfolio_view(session_id),
        }

    def report_fraud(self, session_id: str, stock_id: str, wall_time: float | None = None) -> dict:
        state = self._state(session_id)
        stock = self.scenario.stock_by_id(stock_id)
        if stock is None:
            raise _not_found("stock", stock_id)
        payload = {"stock_id": stock.id, "authenticity": stock.authenticity.value}
        xp_before = state.portfolio.xp
        ev = self._append_server_event(state, EventKind.REPORT_FRAUD, payload, wall_time)
        state.portfolio = award_xp(state.portfolio, ev, self.scenario, self.xp_rules)
        correct = stock.authenticity.value in ("Fraud", "Fake")
        return {
            "stock_id": stock.id,
            "correct": correct,
            "xp_delta": state.portfolio.xp - xp_before,
            "portfolio": self.portfolio_view(session_id),
        }

    # ----- views over session state ----------------------------------------------

    def portfolio_view(self, session_id: str) -> dict:
        state = self._state(session_id)
        tick = self.current_tick
        positions = []
        for sid, pos in sorted(state.portfolio.positions.items()):
            stock = self.scenario.stock_by_id(sid)
            price = stock.price_cents(tick)
            positions.append(
                {
                    "stock_id": sid,
                    "ticker": stock.ticker,
                    "shares": pos.shares,
                    "cost_basis_cents": pos.cost_basis_cents,
                    "price_cents": price,
                    "value_cents": pos.shares * price,
                }
            )
        value = state.portfolio.value_cents(lambda sid: self.scenario.stock_by_id(sid).price_cents(tick))
        return {
            "session_id": session_id,
            "tick": tick,
            "cash_cents": state.portfolio.cash_cents,
            "cash": state.portfolio.cash_cents / 100.0,
            "xp": state.portfolio.xp,
            "level": state.portfolio.level,
            "positions": positions,
            "total_value_cents": value,
        }

    def events_of(self, session_id: str) -> list[SessionEvent]:
        self._state(session_id)
        return [SessionEvent.from_record(r) for r in self.store.records(session_id)]

    def footprint(self, session_id: str) -> DigitalFootprint:
        state = self._state(session_id)
        try:
            return fold_footprint(
                self.events_of(session_id),
                user_age=state.api.user_age,
                dwell_cap=self.dwell_cap,
                session_id=session_id,
            )
        except TelemetryError as exc:
            raise ApiError(422, "TelemetryNestingError", str(exc))

    def session_analytics(self, session_id: str) -> dict:
        fp = self.footprint(session_id)
        return {
            "session_id": session_id,
            "footprint": fp.to_dict(),
            "portfolio": self.portfolio_view(session_id),
        }

    # ----- personalization and admin ------------------------------------------------

    def _ensure_model(self) -> PipelineModel:
        if self.model is None:
            spec = default_cohort_spec(seed=self.cohort_seed)
            table = build_training_table(generate_cohort(spec))
            self.model = train_pipeline(table, PipelineConfig(), seed=self.train_seed)
        return self.model

    def feedback(self, session_id: str, classifier_kind: str = "Perceptron") -> dict:
        state = self._state(session_id)
        model = self._ensure_model()
        fp = self.footprint(session_id)
        predicted, confidence = predict_type(model, fp, classifier_kind)
        entry = select_resources(self.pool, predicted)
        bundle = FeedbackBundle(
            session_id=session_id,
            predicted_type=predicted,
            confidence=confidence,
            elements=entry.elements,
            scams=entry.scams,
            difficulty=entry.difficulty,
        )
        state.last_bundle = bundle
        return bundle.to_dict()

    def train(self, seed: int | None = None, cohort_seed: int | None = None) -> dict:
        spec = default_cohort_spec(seed=self.cohort_seed if cohort_seed is None else cohort_seed)
        table = build_training_table(generate_cohort(spec))
        model = train_pipeline(table, PipelineConfig(), seed=self.train_seed if seed is None else seed)
        self.model = model  # atomic publication: readers see old or new
        return {
            "accuracies": dict(sorted(model.accuracies.items())),
            "selected_features": model.selected_features,
            "cohort": {"n": table.n, "seed": spec.seed},
        }

    def admin_report(self, cohort_seed: int | None = None, generated_at: str | None = None) -> dict:
        spec = default_cohort_spec(seed=self.cohort_seed if cohort_seed is None else cohort_seed)
        cohort = generate_cohort(spec)
        report = build_report(
            cohort, cohort_id=f"synthetic-{spec.seed}", generated_at=generated_at
        )
        self.last_report_id = report.cohort_id
        return report.to_dict()
