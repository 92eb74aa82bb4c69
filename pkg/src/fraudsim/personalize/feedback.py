"""Resource selection and the continuous feedback loop.

select_resources is a pure lookup into the knowledge pool; feedback_loop
re-folds a session's footprint every N events and emits a fresh bundle only
when the predicted type (and with it the difficulty) changes.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from ..session.events import SessionEvent
from ..session.footprint import FootprintFolder
from .pipeline import PipelineModel, predict_type
from .types import FeedbackBundle, InvestorType, KnowledgePool


def select_resources(pool: KnowledgePool, t: InvestorType):
    """Return the pool entry for an investor type, verbatim."""
    return pool.entry_for(t)


def _bundle(session_id, t, confidence, pool) -> FeedbackBundle:
    entry = select_resources(pool, t)
    return FeedbackBundle(
        session_id=session_id,
        predicted_type=t,
        confidence=confidence,
        elements=entry.elements,
        scams=entry.scams,
        difficulty=entry.difficulty,
    )


def feedback_loop(
    model: PipelineModel,
    events: Iterable,
    pool: KnowledgePool,
    user_age: float,
    session_id: str = "session",
    every: int = 25,
    classifier_kind: str = "Perceptron",
    health: dict | None = None,
) -> Iterator[FeedbackBundle]:
    """Yield feedback bundles as a session's event stream unfolds.

    Always emits one initial bundle (from the empty footprint), then re-predicts
    after every `every` well-formed events and emits only on change. Malformed
    records are skipped and counted under health['malformed'].
    """
    if every < 1:
        raise ValueError(f"re-prediction cadence must be >= 1, got {every}")
    folder = FootprintFolder(user_age=user_age, session_id=session_id)
    t, conf = predict_type(model, folder.result(), classifier_kind)
    current = _bundle(session_id, t, conf, pool)
    yield current

    seen = 0
    for item in events:
        try:
            ev = item if isinstance(item, SessionEvent) else SessionEvent.from_record(item)
            folder.feed(ev)
        except (KeyError, ValueError, TypeError):
            if health is not None:
                health["malformed"] = health.get("malformed", 0) + 1
            continue
        seen += 1
        if seen % every == 0:
            t, conf = predict_type(model, folder.result(), classifier_kind)
            if t != current.predicted_type or select_resources(pool, t).difficulty != current.difficulty:
                current = _bundle(session_id, t, conf, pool)
                yield current
