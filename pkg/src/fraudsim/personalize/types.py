"""Investor taxonomy, game-design elements and the knowledge pool.

The pool is an editable versioned YAML file mapping every investor type to the
game-design elements, scam scenarios and difficulty it should receive. The
shipped default is authored content, not expert ground truth; swap it out with
--pool on the CLI or the service config.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

import yaml

from ..simkit.content import ScamTag

NOVICE = "Novice"
EXPERIENCED = "Experienced"

EXPERIENCED_SUBTYPES = (
    "RiskIntolerant",
    "Confident",
    "LossAverseYoung",
    "ConservativeLongTerm",
)


class Motivation(str, Enum):
    EXTRINSIC = "Extrinsic"
    INTRINSIC = "Intrinsic"
    BOTH = "Both"


class GameDesignElement(str, Enum):
    BADGES = "Badges"
    COLLECTIONS = "Collections"
    CONTENT_UNLOCKING = "ContentUnlocking"
    LEADERBOARDS = "Leaderboards"
    QUESTS = "Quests"
    POINTS = "Points"
    SOCIAL_GRAPH = "SocialGraph"
    TEAMS = "Teams"
    VIRTUAL_GOODS = "VirtualGoods"
    PERFORMANCE_CONTINGENT_REWARDS = "PerformanceContingentRewards"
    COMPETENCE_RELATED_AWARDS = "CompetenceRelatedAwards"
    UNEXPECTED_AWARDS = "UnexpectedAwards"


# Elements that appear on both motivation lists carry Both.
ELEMENT_MOTIVATION = {
    GameDesignElement.BADGES: Motivation.EXTRINSIC,
    GameDesignElement.COLLECTIONS: Motivation.EXTRINSIC,
    GameDesignElement.CONTENT_UNLOCKING: Motivation.BOTH,
    GameDesignElement.LEADERBOARDS: Motivation.EXTRINSIC,
    GameDesignElement.QUESTS: Motivation.BOTH,
    GameDesignElement.POINTS: Motivation.EXTRINSIC,
    GameDesignElement.SOCIAL_GRAPH: Motivation.EXTRINSIC,
    GameDesignElement.TEAMS: Motivation.EXTRINSIC,
    GameDesignElement.VIRTUAL_GOODS: Motivation.EXTRINSIC,
    GameDesignElement.PERFORMANCE_CONTINGENT_REWARDS: Motivation.BOTH,
    GameDesignElement.COMPETENCE_RELATED_AWARDS: Motivation.INTRINSIC,
    GameDesignElement.UNEXPECTED_AWARDS: Motivation.INTRINSIC,
}

DIFFICULTIES = ("Easy", "Medium", "Hard")


@dataclass(frozen=True)
class InvestorType:
    value: str  # Novice or Experienced
    experienced_subtype: str | None = None

    def __post_init__(self):
        if self.value not in (NOVICE, EXPERIENCED):
            raise ValueError(f"unknown investor type {self.value!r}")
        if self.experienced_subtype is not None:
            if self.value != EXPERIENCED:
                raise ValueError("subtype only applies to Experienced investors")
            if self.experienced_subtype not in EXPERIENCED_SUBTYPES:
                raise ValueError(f"unknown experienced subtype {self.experienced_subtype!r}")

    def key(self) -> str:
        if self.experienced_subtype:
            return f"{self.value}/{self.experienced_subtype}"
        return self.value

    @classmethod
    def from_key(cls, key: str) -> "InvestorType":
        if "/" in key:
            value, subtype = key.split("/", 1)
            return cls(value=value, experienced_subtype=subtype)
        return cls(value=key)


def all_type_keys() -> list[str]:
    return [NOVICE, EXPERIENCED] + [f"{EXPERIENCED}/{s}" for s in EXPERIENCED_SUBTYPES]


class PoolValidationError(ValueError):
    pass


@dataclass(frozen=True)
class PoolEntry:
    elements: tuple[GameDesignElement, ...]
    scams: tuple[ScamTag, ...]
    difficulty: str


@dataclass
class KnowledgePool:
    version: str
    entries: dict[str, PoolEntry] = field(default_factory=dict)

    def entry_for(self, t: InvestorType) -> PoolEntry:
        return self.entries[t.key()]

    def validate(self) -> None:
        missing = [k for k in all_type_keys() if k not in self.entries]
        if missing:
            raise PoolValidationError(f"knowledge pool missing investor type(s): {missing}")
        for key, entry in self.entries.items():
            if entry.difficulty not in DIFFICULTIES:
                raise PoolValidationError(f"{key}: unknown difficulty {entry.difficulty!r}")
            if not entry.elements:
                raise PoolValidationError(f"{key}: entry lists no game-design elements")


@dataclass(frozen=True)
class FeedbackBundle:
    session_id: str
    predicted_type: InvestorType
    confidence: float
    elements: tuple[GameDesignElement, ...]
    scams: tuple[ScamTag, ...]
    difficulty: str

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "predicted_type": self.predicted_type.key(),
            "confidence": self.confidence,
            "elements": [e.value for e in self.elements],
            "scams": [s.value for s in self.scams],
            "difficulty": self.difficulty,
        }


def _parse_pool(doc: dict) -> KnowledgePool:
    if not isinstance(doc, dict) or "entries" not in doc:
        raise PoolValidationError("knowledge pool file must map 'version' and 'entries'")
    entries = {}
    for key, raw in doc["entries"].items():
        try:
            elements = tuple(GameDesignElement(e) for e in raw.get("elements", []))
            scams = tuple(ScamTag(s) for s in raw.get("scams", []))
        except ValueError as exc:
            raise PoolValidationError(f"{key}: {exc}") from exc
        entries[key] = PoolEntry(
            elements=elements, scams=scams, difficulty=raw.get("difficulty", "Medium")
        )
    pool = KnowledgePool(version=str(doc.get("version", "1")), entries=entries)
    pool.validate()
    return pool


def load_knowledge_pool(path: str) -> KnowledgePool:
    with open(path, "r", encoding="utf-8") as fh:
        return _parse_pool(yaml.safe_load(fh))


def default_knowledge_pool() -> KnowledgePool:
    text = resources.files("fraudsim.data").joinpath("knowledge_pool.yaml").read_text("utf-8")
    return _parse_pool(yaml.safe_load(text))
