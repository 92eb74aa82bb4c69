from .events import (
    EVENT_LOG_SCHEMA,
    EventKind,
    SessionEvent,
    read_event_log,
    write_event_log,
)
from .portfolio import (
    InsufficientFunds,
    InsufficientShares,
    Portfolio,
    Position,
    StockDelisted,
    TradeError,
    TradeValidationError,
    award_xp,
    execute_trade,
)
from .footprint import (
    METRIC_NAMES,
    DigitalFootprint,
    FootprintFolder,
    TelemetryError,
    fold_footprint,
)

__all__ = [
    "EVENT_LOG_SCHEMA",
    "EventKind",
    "SessionEvent",
    "read_event_log",
    "write_event_log",
    "TradeError",
    "TradeValidationError",
    "InsufficientFunds",
    "InsufficientShares",
    "StockDelisted",
    "Portfolio",
    "Position",
    "execute_trade",
    "award_xp",
    "METRIC_NAMES",
    "DigitalFootprint",
    "FootprintFolder",
    "TelemetryError",
    "fold_footprint",
]
