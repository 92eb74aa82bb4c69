"""Scenario assembly: materialise stocks, news and chat from a config + seed.

A scenario config is a versioned YAML document (see data/scenario_default.yaml)
holding the stock table, fraud parameters and authored news/chat text. All
randomness comes from the counter-based generator in rng.py, so the same
(config, seed) always materialises the same scenario byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import yaml

from ..rng import derive_seed, splitmix64
from .content import ChatAuthor, ChatMessage, NewsArticle, ScamTag, Sentiment, SourceTrust
from .stocks import (
    Authenticity,
    PriceDomainError,
    PriceProcessParams,
    Stock,
    delist_fake,
    step_fraud_price,
    step_real_price,
)

SCENARIO_SCHEMA = "scenario/v1"

# Stream tags keep each draw family on its own child seed.
_PRICE_STREAM = 0x50
_NEWS_STREAM = 0x4E
_CHAT_STREAM = 0x43


class ScenarioConfigError(ValueError):
    """Raised when a scenario config cannot produce a valid scenario."""


@dataclass
class Scenario:
    """A fully materialised market world."""

    name: str
    horizon: int
    initial_cash_cents: int
    initial_xp: int
    difficulty: str
    seed: int
    stocks: list[Stock] = field(default_factory=list)
    articles: list[NewsArticle] = field(default_factory=list)
    chat_script: list[ChatMessage] = field(default_factory=list)

    def stock_by_id(self, stock_id: str) -> Stock | None:
        for s in self.stocks:
            if s.id == stock_id:
                return s
        return None

    def article_by_id(self, article_id: str) -> NewsArticle | None:
        for a in self.articles:
            if a.id == article_id:
                return a
        return None

    def articles_at_or_before(self, tick: int) -> list[NewsArticle]:
        return [a for a in self.articles if a.publish_tick <= tick]

    def chat_at_or_before(self, tick: int) -> list[ChatMessage]:
        return [m for m in self.chat_script if m.publish_tick <= tick]

    def to_dict(self) -> dict:
        return {
            "schema": SCENARIO_SCHEMA,
            "name": self.name,
            "horizon": self.horizon,
            "initial_cash_cents": self.initial_cash_cents,
            "initial_xp": self.initial_xp,
            "difficulty": self.difficulty,
            "seed": self.seed,
            "stocks": [s.to_dict() for s in self.stocks],
            "articles": [a.to_dict() for a in self.articles],
            "chat_script": [m.to_dict() for m in self.chat_script],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        if d.get("schema") != SCENARIO_SCHEMA:
            raise ScenarioConfigError(f"unsupported scenario schema: {d.get('schema')!r}")
        return cls(
            name=d["name"],
            horizon=d["horizon"],
            initial_cash_cents=d["initial_cash_cents"],
            initial_xp=d["initial_xp"],
            difficulty=d["difficulty"],
            seed=d["seed"],
            stocks=[Stock.from_dict(s) for s in d["stocks"]],
            articles=[NewsArticle.from_dict(a) for a in d["articles"]],
            chat_script=[ChatMessage.from_dict(m) for m in d["chat_script"]],
        )


def load_scenario_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        config = yaml.safe_load(fh)
    _validate_config(config)
    return config


def default_scenario_config() -> dict:
    text = resources.files("fraudsim.data").joinpath("scenario_default.yaml").read_text("utf-8")
    config = yaml.safe_load(text)
    _validate_config(config)
    return config


def _validate_config(config: dict) -> None:
    if not isinstance(config, dict):
        raise ScenarioConfigError("scenario config must be a mapping")
    if config.get("version") != 1:
        raise ScenarioConfigError(f"unsupported scenario config version: {config.get('version')!r}")
    horizon = config.get("horizon", 52)
    if horizon < 2:
        raise ScenarioConfigError(f"horizon must be >= 2, got {horizon}")
    stocks = config.get("stocks") or []
    if len(stocks) == 0:
        raise ScenarioConfigError("scenario config lists no stocks")
    for row in stocks:
        auth = Authenticity(row.get("authenticity", "Real"))
        if row.get("start_price", 0) <= 0:
            raise ScenarioConfigError(f"stock {row.get('ticker')} start_price must be > 0")
        if auth is Authenticity.FRAUD:
            params = _fraud_params(row, seed=0)
            try:
                params.validate_fraud(horizon)
            except PriceDomainError as exc:
                raise ScenarioConfigError(f"stock {row.get('ticker')}: {exc}") from exc
        if auth is Authenticity.FAKE:
            delist = row.get("delist_tick")
            if delist is None or not 0 < delist <= horizon:
                raise ScenarioConfigError(
                    f"fake stock {row.get('ticker')} needs a delist_tick in (0, horizon]"
                )


def _fraud_params(row: dict, seed: int) -> PriceProcessParams:
    return PriceProcessParams(
        seed=seed,
        drift=row.get("drift", 0.0),
        volatility=row.get("volatility", 0.0),
        pump_start=row.get("pump_start", 0),
        pump_len=row.get("pump_len", 1),
        dump_len=row.get("dump_len", 1),
        pump_multiple=row.get("pump_multiple", 3.0),
        crash_floor=row.get("crash_floor", 0.2),
    )


def _materialise_prices(row: dict, params: PriceProcessParams, horizon: int) -> list[int]:
    auth = Authenticity(row["authenticity"])
    prices = [float(row["start_price"])]
    for tick in range(1, horizon + 1):
        prev = prices[-1]
        if auth is Authenticity.FRAUD:
            prices.append(step_fraud_price(prev, params, tick, horizon))
        else:
            prices.append(step_real_price(prev, params, tick))
    # Quantise to cents; clamp at 1 cent so positivity survives rounding.
    return [max(1, round(p * 100)) for p in prices]


def _pick(seed: int, counter: int, n: int) -> int:
    return splitmix64(seed, counter) % n


def generate_scenario(config: dict, seed: int) -> Scenario:
    """Materialise a Scenario from a validated config and a seed.

    Every stock gets at least one trusted article; every Fraud stock gets at
    least one untrusted Positive pump article inside its pump window; the chat
    script carries at least three recruiter messages tagged PyramidScheme.
    """
    _validate_config(config)
    horizon = config.get("horizon", 52)
    news_cfg = config.get("news", {})
    chat_cfg = config.get("chat", {})

    stocks: list[Stock] = []
    articles: list[NewsArticle] = []
    article_no = 0

    for i, row in enumerate(config["stocks"]):
        auth = Authenticity(row["authenticity"])
        params = _fraud_params(row, seed=derive_seed(seed, _PRICE_STREAM, i))
        history = _materialise_prices(row, params, horizon)
        stock = Stock(
            id=f"s{i:02d}",
            ticker=row["ticker"],
            name=row["name"],
            authenticity=auth,
            sector=row.get("sector", "General"),
            float_shares=row.get("float_shares", 1_000_000),
            price_history=history,
            params=params,
            delist_tick=row.get("delist_tick") if auth is Authenticity.FAKE else None,
        )
        if auth is Authenticity.FAKE:
            stock = delist_fake(stock, row["delist_tick"])
        stocks.append(stock)

        news_seed = derive_seed(seed, _NEWS_STREAM, i)
        ctr = 0

        trusted_heads = news_cfg.get("trusted_headlines", ["{name} publishes quarterly results"])
        n_trusted = 1 + _pick(news_seed, ctr, 2)
        ctr += 1
        for _ in range(n_trusted):
            tick = _pick(news_seed, ctr, horizon)
            ctr += 1
            sentiment = (Sentiment.POSITIVE, Sentiment.NEUTRAL, Sentiment.NEGATIVE)[
                _pick(news_seed, ctr, 3)
            ]
            ctr += 1
            head = trusted_heads[_pick(news_seed, ctr, len(trusted_heads))]
            ctr += 1
            articles.append(
                NewsArticle(
                    id=f"a{article_no:03d}",
                    stock_id=stock.id,
                    headline=head.format(name=stock.name, ticker=stock.ticker),
                    body=news_cfg.get("trusted_body", "Company update.").format(
                        name=stock.name, ticker=stock.ticker
                    ),
                    sentiment=sentiment,
                    source_trust=SourceTrust.TRUSTED,
                    publish_tick=tick,
                )
            )
            article_no += 1

        if auth is Authenticity.FRAUD:
            pump_heads = news_cfg.get("untrusted_pump_headlines", ["{ticker} is going to the moon"])
            n_pump = 1 + _pick(news_seed, ctr, 2)
            ctr += 1
            for _ in range(n_pump):
                tick = params.pump_start + _pick(news_seed, ctr, params.pump_len)
                ctr += 1
                head = pump_heads[_pick(news_seed, ctr, len(pump_heads))]
                ctr += 1
                articles.append(
                    NewsArticle(
                        id=f"a{article_no:03d}",
                        stock_id=stock.id,
                        headline=head.format(name=stock.name, ticker=stock.ticker),
                        body=news_cfg.get("untrusted_body", "Act now before it is too late!").format(
                            name=stock.name, ticker=stock.ticker
                        ),
                        sentiment=Sentiment.POSITIVE,
                        source_trust=SourceTrust.UNTRUSTED,
                        publish_tick=tick,
                        trap_tag=ScamTag.PENNY_STOCK_PUMP_AND_DUMP,
                    )
                )
                article_no += 1

    chat_script: list[ChatMessage] = []
    msg_no = 0
    for entry in chat_cfg.get("mascot", []):
        chat_script.append(
            ChatMessage(
                id=f"c{msg_no:02d}",
                author=ChatAuthor.MASCOT,
                text=entry["text"],
                publish_tick=entry.get("tick", msg_no),
                reply_options=tuple(entry.get("reply_options", ())),
            )
        )
        msg_no += 1

    chat_seed = derive_seed(seed, _CHAT_STREAM)
    recruiter_texts = chat_cfg.get(
        "recruiter",
        [
            "I tripled my savings in a month. Join my circle and I will show you how.",
            "Spots are limited: recruit two friends and your membership pays for itself.",
            "No product, no risk, just pass-through profits. Are you in?",
        ],
    )
    n_recruiter = max(3, len(recruiter_texts))
    for j in range(n_recruiter):
        tick = _pick(chat_seed, j, horizon)
        chat_script.append(
            ChatMessage(
                id=f"c{msg_no:02d}",
                author=ChatAuthor.RECRUITER,
                text=recruiter_texts[j % len(recruiter_texts)],
                publish_tick=tick,
                trap_tag=ScamTag.PYRAMID_SCHEME,
            )
        )
        msg_no += 1
    chat_script.sort(key=lambda m: (m.publish_tick, m.id))

    return Scenario(
        name=config.get("name", "scenario"),
        horizon=horizon,
        initial_cash_cents=round(float(config.get("initial_cash", 20000.0)) * 100),
        initial_xp=int(config.get("initial_xp", 100)),
        difficulty=config.get("difficulty", "Medium"),
        seed=seed,
        stocks=stocks,
        articles=articles,
        chat_script=chat_script,
    )
