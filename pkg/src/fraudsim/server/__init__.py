from .service import (
    ApiError,
    ApiSession,
    FileEventStore,
    MemoryEventStore,
    PlatformService,
)
from .bots import BotPolicy, novice_policy, experienced_policy, run_bot_session

__all__ = [
    "ApiError",
    "ApiSession",
    "FileEventStore",
    "MemoryEventStore",
    "PlatformService",
    "BotPolicy",
    "novice_policy",
    "experienced_policy",
    "run_bot_session",
]
