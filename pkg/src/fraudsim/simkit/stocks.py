"""Tradable listings and their scripted price processes.

Real stocks follow a geometric random walk. Fraud stocks follow the same walk
until a scripted pump-and-dump takes over: a geometric ramp that multiplies the
price by at least `pump_multiple`, then a geometric decay that crashes it below
`crash_floor` times the peak, then a gently decaying aftermath so the crash
sticks for the rest of the horizon. Fake stocks are fabricated companies that
delist to an exact price of zero.

Prices inside step functions are float dollars; materialised scenarios quantise
to integer cents (see scenario.py) so portfolio accounting stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from ..rng import normal

# Ramp overshoots / decay undershoots leave headroom so the pump and crash
# guarantees still hold after cent quantisation.
PUMP_OVERSHOOT = 1.02
DUMP_UNDERSHOOT = 0.90
AFTERMATH_DECAY = 0.995


class Authenticity(str, Enum):
    REAL = "Real"
    FRAUD = "Fraud"
    FAKE = "Fake"


class PriceDomainError(ValueError):
    """Raised when a price step is asked for an out-of-domain input."""


class ContractViolation(ValueError):
    """Raised when an operation is called on the wrong kind of stock."""


@dataclass(frozen=True)
class PriceProcessParams:
    """Parameters of one stock's price script.

    The pump/dump fields only matter for Fraud stocks; drift and volatility are
    per-tick fractions of the geometric walk.
    """

    seed: int
    drift: float = 0.0
    volatility: float = 0.0
    pump_start: int = 0
    pump_len: int = 1
    dump_len: int = 1
    pump_multiple: float = 3.0
    crash_floor: float = 0.2

    def validate_fraud(self, horizon: int) -> None:
        if self.pump_multiple <= 1.0:
            raise PriceDomainError(f"pump_multiple must exceed 1, got {self.pump_multiple}")
        if not 0.0 < self.crash_floor < 1.0:
            raise PriceDomainError(f"crash_floor must be in (0,1), got {self.crash_floor}")
        if self.pump_len < 1 or self.dump_len < 1:
            raise PriceDomainError("pump_len and dump_len must be >= 1")
        if self.pump_start + self.pump_len + self.dump_len > horizon:
            raise PriceDomainError(
                f"fraud phases end at tick {self.pump_start + self.pump_len + self.dump_len}, "
                f"beyond horizon {horizon}"
            )


def step_real_price(prev: float, params: PriceProcessParams, tick: int) -> float:
    """One geometric-random-walk step: prev * exp(drift + volatility * z).

    z is the standard-normal draw of the counter-based generator at
    (params.seed, tick), so identical (seed, tick, prev) always give
    identical output regardless of call order.
    """
    if not math.isfinite(prev) or prev <= 0.0:
        raise PriceDomainError(f"prev price must be finite and > 0, got {prev}")
    z = normal(params.seed, tick) if params.volatility > 0.0 else 0.0
    return prev * math.exp(params.drift + params.volatility * z)


def step_fraud_price(prev: float, params: PriceProcessParams, tick: int, horizon: int) -> float:
    """One step of the pump-and-dump script.

    Phase of the step computing price[tick] from price[tick-1]:
      accumulation  tick <= pump_start                       random walk
      pump          pump_start < tick <= pump_end            x ramp per tick
      dump          pump_end < tick <= dump_end              x decay per tick
      aftermath     tick > dump_end                          x 0.995 per tick

    The ramp is sized so price[pump_end] >= pump_multiple * price[pump_start];
    the decay so price[dump_end] <= crash_floor * peak.
    """
    if tick > horizon:
        raise PriceDomainError(f"tick {tick} beyond horizon {horizon}")
    if not math.isfinite(prev) or prev <= 0.0:
        raise PriceDomainError(f"prev price must be finite and > 0, got {prev}")
    pump_end = params.pump_start + params.pump_len
    dump_end = pump_end + params.dump_len
    if tick <= params.pump_start:
        return step_real_price(prev, params, tick)
    if tick <= pump_end:
        ramp = (params.pump_multiple * PUMP_OVERSHOOT) ** (1.0 / params.pump_len)
        return prev * ramp
    if tick <= dump_end:
        decay = (params.crash_floor * DUMP_UNDERSHOOT) ** (1.0 / params.dump_len)
        return prev * decay
    return prev * AFTERMATH_DECAY


@dataclass
class Stock:
    """A listing on the simulated market.

    price_history holds integer cents indexed by tick (index 0 = tick 0).
    Fake stocks carry a delist_tick; their price is exactly 0 from that tick on.
    """

    id: str
    ticker: str
    name: str
    authenticity: Authenticity
    sector: str
    float_shares: int
    price_history: list[int] = field(default_factory=list)
    params: PriceProcessParams | None = None
    delist_tick: int | None = None

    def price_cents(self, tick: int) -> int:
        if not 0 <= tick < len(self.price_history):
            raise PriceDomainError(f"tick {tick} outside recorded history of {self.ticker}")
        return self.price_history[tick]

    def is_delisted(self, tick: int) -> bool:
        return self.delist_tick is not None and tick >= self.delist_tick

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "ticker": self.ticker,
            "name": self.name,
            "authenticity": self.authenticity.value,
            "sector": self.sector,
            "float_shares": self.float_shares,
            "price_history_cents": list(self.price_history),
            "delist_tick": self.delist_tick,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Stock":
        return cls(
            id=d["id"],
            ticker=d["ticker"],
            name=d["name"],
            authenticity=Authenticity(d["authenticity"]),
            sector=d["sector"],
            float_shares=d["float_shares"],
            price_history=list(d["price_history_cents"]),
            delist_tick=d.get("delist_tick"),
        )


def delist_fake(stock: Stock, tick: int) -> Stock:
    """Zero the price of a Fake stock from `tick` onward.

    Holders' positions become worthless through the zero price; cash is
    untouched. Calling this on a Real or Fraud stock is a contract violation.
    """
    if stock.authenticity is not Authenticity.FAKE:
        raise ContractViolation(f"delist_fake on {stock.authenticity.value} stock {stock.ticker}")
    if stock.delist_tick is not None and tick < stock.delist_tick:
        raise ContractViolation(
            f"delist at tick {tick} precedes configured delist tick {stock.delist_tick}"
        )
    history = [0 if t >= tick else p for t, p in enumerate(stock.price_history)]
    return replace(stock, price_history=history, delist_tick=tick)
