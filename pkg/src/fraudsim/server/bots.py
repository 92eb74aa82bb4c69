"""Headless bot sessions for desk-scale end-to-end runs without humans.

Bots drive the same PlatformService methods the HTTP API calls, so a bot
session exercises validation, enrichment, accounting and XP exactly like a
browser session. The two archetypes are calibrated to be separable on the
footprint metrics: the novice skims the market, chases untrusted hype and buys
manipulated stocks; the experienced bot dwells on the market page, reads
trusted coverage, buys real listings and reports pumps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..session.events import SessionEvent
from ..session.footprint import DigitalFootprint
from ..simkit.scenario import Scenario
from .service import ApiError, MemoryEventStore, PlatformService

NOVICE_BOT = "NoviceBot"
EXPERIENCED_BOT = "ExperiencedBot"


@dataclass(frozen=True)
class BotPolicy:
    archetype: str
    seed: int
    age_low: int
    age_high: int
    market_dwell: tuple[float, float]  # mean, sd seconds per tick
    stock_dwell: tuple[float, float]
    article_dwell: tuple[float, float]
    portfolio_dwell: tuple[float, float]
    # One categorical decision per action slot; probabilities sum to 1.
    action_probs: dict = field(
        default_factory=lambda: {"read": 0.4, "stock": 0.3, "portfolio": 0.2, "idle": 0.1}
    )
    actions_per_tick: int = 2
    p_untrusted: float = 0.5  # preference when picking an article
    p_buy_on_pump_read: float = 0.0
    p_buy_random: float = 0.0
    p_buy_real: float = 0.0
    p_report_suspect: float = 0.0
    p_sell_winner: float = 0.0
    pump_detect_ratio: float = 1.8  # price multiple that makes a stock a suspect

    def __post_init__(self):
        total = sum(self.action_probs.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"action probabilities must sum to 1, got {total}")


def novice_policy(seed: int) -> BotPolicy:
    return BotPolicy(
        archetype=NOVICE_BOT,
        seed=seed,
        age_low=19,
        age_high=29,
        market_dwell=(12.0, 3.0),
        stock_dwell=(14.0, 5.0),
        article_dwell=(20.0, 8.0),
        portfolio_dwell=(8.0, 3.0),
        action_probs={"read": 0.45, "stock": 0.3, "portfolio": 0.15, "idle": 0.1},
        p_untrusted=0.8,
        p_buy_on_pump_read=0.7,
        p_buy_random=0.06,
        p_buy_real=0.05,
        p_report_suspect=0.02,
        p_sell_winner=0.1,
    )


def experienced_policy(seed: int) -> BotPolicy:
    return BotPolicy(
        archetype=EXPERIENCED_BOT,
        seed=seed,
        age_low=32,
        age_high=55,
        market_dwell=(24.0, 5.0),
        stock_dwell=(18.0, 6.0),
        article_dwell=(25.0, 8.0),
        portfolio_dwell=(12.0, 4.0),
        action_probs={"read": 0.35, "stock": 0.3, "portfolio": 0.25, "idle": 0.1},
        p_untrusted=0.12,
        p_buy_on_pump_read=0.02,
        p_buy_random=0.0,
        p_buy_real=0.3,
        p_report_suspect=0.35,
        p_sell_winner=0.3,
    )


def policy_for(archetype: str, seed: int) -> BotPolicy:
    if archetype in (NOVICE_BOT, "novice"):
        return novice_policy(seed)
    if archetype in (EXPERIENCED_BOT, "experienced"):
        return experienced_policy(seed)
    raise ValueError(f"unknown bot archetype {archetype!r}")


class _VirtualClock:
    def __init__(self):
        self.now = 0.0

    def __call__(self) -> float:
        return self.now


@dataclass
class BotResult:
    session_id: str
    age: int
    events: list[SessionEvent]
    footprint: DigitalFootprint
    service: PlatformService


def run_bot_session(
    policy: BotPolicy,
    scenario: Scenario,
    model=None,
    service: PlatformService | None = None,
) -> BotResult:
    """Play one full-horizon session under a policy; deterministic under seed."""
    rng = np.random.default_rng(policy.seed)
    clock = _VirtualClock()
    if service is None:
        service = PlatformService(scenario, store=MemoryEventStore(), model=model, clock=clock)
    age = int(rng.integers(policy.age_low, policy.age_high + 1))
    session_id = f"bot-{policy.archetype.lower()}-{policy.seed:04d}"
    service.create_session(age, session_id=session_id)

    def dwell(spec: tuple[float, float]) -> float:
        return float(max(0.5, rng.normal(spec[0], spec[1])))

    def visit(page: str, seconds: float, stock_id: str | None = None) -> None:
        payload = {"page": page}
        if stock_id:
            payload["stock_id"] = stock_id
        enter = {"kind": "PageEnter", "tick": service.current_tick, "wall_time": clock.now, "payload": payload}
        clock.now += seconds
        leave = {"kind": "PageLeave", "tick": service.current_tick, "wall_time": clock.now, "payload": payload}
        service.append_events(session_id, [enter, leave])
        clock.now += 1.0  # navigation gap

    def read(article: dict, seconds: float) -> None:
        payload = {"article_id": article["article_id"]}
        start = {"kind": "ReadArticleStart", "tick": service.current_tick, "wall_time": clock.now, "payload": payload}
        clock.now += seconds
        end = {"kind": "ReadArticleEnd", "tick": service.current_tick, "wall_time": clock.now, "payload": payload}
        service.append_events(session_id, [start, end])
        clock.now += 1.0

    def try_buy(stock_id: str, budget_frac: float) -> None:
        view = service.portfolio_view(session_id)
        stock = service.scenario.stock_by_id(stock_id)
        price = stock.price_cents(service.current_tick)
        if price <= 0:
            return
        budget = int(view["cash_cents"] * budget_frac)
        shares = min(budget // price, 500)
        if shares < 1:
            return
        try:
            service.trade(session_id, stock_id, "Buy", int(shares), wall_time=clock.now)
        except ApiError:
            pass
        clock.now += 2.0

    read_article_ids: set[str] = set()
    reported: set[str] = set()
    real_ids = [s.id for s in scenario.stocks if s.authenticity.value == "Real"]

    for _ in range(scenario.horizon):
        tick = service.current_tick
        if policy.actions_per_tick > 0:
            visit("market", dwell(policy.market_dwell))

        for _ in range(policy.actions_per_tick):
            names = list(policy.action_probs)
            action = rng.choice(names, p=[policy.action_probs[n] for n in names])
            if action == "read":
                articles = service.news_view()["articles"]
                fresh = [a for a in articles if a["article_id"] not in read_article_ids]
                if not fresh:
                    continue
                want_untrusted = rng.random() < policy.p_untrusted
                pool = [a for a in fresh if (a["source_trust"] == "Untrusted") == want_untrusted]
                if not pool:
                    continue  # preferred source exhausted; no fallback, keeps archetypes apart
                article = pool[int(rng.integers(len(pool)))]
                visit("news", dwell(policy.article_dwell) * 0.3)
                read(article, dwell(policy.article_dwell))
                read_article_ids.add(article["article_id"])
                if article["source_trust"] == "Untrusted" and rng.random() < policy.p_buy_on_pump_read:
                    try_buy(article["stock_id"], float(rng.uniform(0.05, 0.15)))
            elif action == "stock":
                stock = scenario.stocks[int(rng.integers(len(scenario.stocks)))]
                visit("stock", dwell(policy.stock_dwell), stock_id=stock.id)
                price0 = stock.price_history[0]
                price_now = stock.price_cents(tick)
                peak = max(stock.price_history[: tick + 1])
                pumped = price0 > 0 and price_now / price0 >= policy.pump_detect_ratio
                # A pump that already collapsed is just as suspicious as a live one.
                crashed = peak / price0 >= policy.pump_detect_ratio and price_now < 0.5 * peak
                if (
                    stock.id not in reported
                    and stock.authenticity.value in ("Fraud", "Fake")
                    and (pumped or crashed or stock.is_delisted(tick))
                    and rng.random() < policy.p_report_suspect
                ):
                    service.report_fraud(session_id, stock.id, wall_time=clock.now)
                    reported.add(stock.id)
                    clock.now += 2.0
                elif rng.random() < policy.p_buy_random:
                    try_buy(stock.id, float(rng.uniform(0.03, 0.08)))
            elif action == "portfolio":
                visit("portfolio", dwell(policy.portfolio_dwell))
                view = service.portfolio_view(session_id)
                for pos in view["positions"]:
                    gain = pos["value_cents"] - pos["cost_basis_cents"]
                    if gain > 0 and rng.random() < policy.p_sell_winner:
                        try:
                            service.trade(
                                session_id, pos["stock_id"], "Sell", pos["shares"], wall_time=clock.now
                            )
                        except ApiError:
                            pass
                        clock.now += 2.0
                if rng.random() < policy.p_buy_real and real_ids:
                    try_buy(real_ids[int(rng.integers(len(real_ids)))], float(rng.uniform(0.05, 0.12)))
        if service.current_tick < scenario.horizon:
            service.advance(1)
        clock.now += 5.0  # off-platform time between weeks

    return BotResult(
        session_id=session_id,
        age=age,
        events=service.events_of(session_id),
        footprint=service.footprint(session_id),
        service=service,
    )
