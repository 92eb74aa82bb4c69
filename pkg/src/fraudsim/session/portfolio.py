"""Portfolio accounting and experience-point rules.

All money is integer cents so the conservation invariant
(cash delta + position value delta at trade price == 0) holds exactly.
Trading is fee-free; XP rule values live in XpRules and are config-overridable.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..simkit.stocks import Authenticity, Stock
from .events import EventKind, SessionEvent


class TradeError(Exception):
    code = "TradeError"


class TradeValidationError(TradeError):
    code = "ValidationError"


class InsufficientFunds(TradeError):
    code = "InsufficientFunds"


class InsufficientShares(TradeError):
    code = "InsufficientShares"


class StockDelisted(TradeError):
    code = "StockDelisted"


@dataclass(frozen=True)
class Position:
    shares: int
    cost_basis_cents: int  # total cents paid for the shares currently held


@dataclass(frozen=True)
class Portfolio:
    cash_cents: int
    xp: int
    level: int = 1
    positions: dict[str, Position] = field(default_factory=dict)

    def shares_of(self, stock_id: str) -> int:
        pos = self.positions.get(stock_id)
        return pos.shares if pos else 0

    def value_cents(self, price_of: "callable") -> int:
        """cash + sum(shares * current price); price_of maps stock_id -> cents."""
        total = self.cash_cents
        for stock_id, pos in self.positions.items():
            total += pos.shares * price_of(stock_id)
        return total

    def to_dict(self) -> dict:
        return {
            "cash_cents": self.cash_cents,
            "xp": self.xp,
            "level": self.level,
            "positions": {
                sid: {"shares": p.shares, "cost_basis_cents": p.cost_basis_cents}
                for sid, p in sorted(self.positions.items())
            },
        }


@dataclass(frozen=True)
class XpRules:
    correct_report: int = 50
    false_report_penalty: int = 10
    profitable_sell: int = 10
    xp_per_level: int = 500


DEFAULT_XP_RULES = XpRules()


def execute_trade(
    portfolio: Portfolio,
    stock: Stock,
    side: str,
    shares: int,
    tick: int,
) -> tuple[Portfolio, dict]:
    """Apply a Buy or Sell at the stock's tick price with zero fees.

    Returns the new portfolio and the trade payload for the emitted event
    (stock_id, side, shares, price_cents, authenticity, realized_pnl_cents on
    sells, cash_after_cents).
    """
    if side not in ("Buy", "Sell"):
        raise TradeValidationError(f"unknown trade side {side!r}")
    if shares < 1:
        raise TradeValidationError(f"shares must be >= 1, got {shares}")
    price = stock.price_cents(tick)
    if stock.authenticity is Authenticity.FAKE and stock.is_delisted(tick):
        raise StockDelisted(f"{stock.ticker} delisted at tick {stock.delist_tick}")
    if price <= 0:
        raise StockDelisted(f"{stock.ticker} has no tradable price at tick {tick}")

    payload = {
        "stock_id": stock.id,
        "side": side,
        "shares": shares,
        "price_cents": price,
        "authenticity": stock.authenticity.value,
    }
    positions = dict(portfolio.positions)
    pos = positions.get(stock.id, Position(shares=0, cost_basis_cents=0))

    if side == "Buy":
        cost = shares * price
        if portfolio.cash_cents < cost:
            raise InsufficientFunds(
                f"need {cost} cents, have {portfolio.cash_cents}"
            )
        positions[stock.id] = Position(pos.shares + shares, pos.cost_basis_cents + cost)
        new = replace(portfolio, cash_cents=portfolio.cash_cents - cost, positions=positions)
    else:
        if pos.shares < shares:
            raise InsufficientShares(f"hold {pos.shares} shares, tried to sell {shares}")
        proceeds = shares * price
        # Average-cost accounting in integer cents; remainder stays with the
        # position so basis is exact when the position closes out.
        basis_removed = pos.cost_basis_cents * shares // pos.shares
        remaining = pos.shares - shares
        if remaining == 0:
            positions.pop(stock.id, None)
        else:
            positions[stock.id] = Position(remaining, pos.cost_basis_cents - basis_removed)
        payload["realized_pnl_cents"] = proceeds - basis_removed
        new = replace(portfolio, cash_cents=portfolio.cash_cents + proceeds, positions=positions)

    payload["cash_after_cents"] = new.cash_cents
    return new, payload


def award_xp(
    portfolio: Portfolio,
    event: SessionEvent,
    scenario=None,
    rules: XpRules = DEFAULT_XP_RULES,
) -> Portfolio:
    """Apply the XP rules for one validated event and recompute the level.

    Correct fraud report (Fraud or Fake stock) earns XP, a false report costs
    some with a floor at zero, and a profitable sell earns a small bonus.
    """
    xp = portfolio.xp
    if event.kind is EventKind.REPORT_FRAUD:
        auth = event.payload.get("authenticity")
        if auth is None and scenario is not None:
            stock = scenario.stock_by_id(event.payload.get("stock_id", ""))
            auth = stock.authenticity.value if stock else None
        if auth in (Authenticity.FRAUD.value, Authenticity.FAKE.value):
            xp += rules.correct_report
        else:
            xp = max(0, xp - rules.false_report_penalty)
    elif event.kind is EventKind.SELL:
        if event.payload.get("realized_pnl_cents", 0) > 0:
            xp += rules.profitable_sell
    level = 1 + xp // rules.xp_per_level
    return replace(portfolio, xp=xp, level=level)
