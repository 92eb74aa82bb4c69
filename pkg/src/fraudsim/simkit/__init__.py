from .stocks import (
    Authenticity,
    PriceProcessParams,
    Stock,
    step_real_price,
    step_fraud_price,
    delist_fake,
    PriceDomainError,
    ContractViolation,
)
from .content import ScamTag, Sentiment, SourceTrust, ChatAuthor, NewsArticle, ChatMessage
from .scenario import Scenario, ScenarioConfigError, generate_scenario, load_scenario_config, default_scenario_config

__all__ = [
    "Authenticity",
    "PriceProcessParams",
    "Stock",
    "step_real_price",
    "step_fraud_price",
    "delist_fake",
    "PriceDomainError",
    "ContractViolation",
    "ScamTag",
    "Sentiment",
    "SourceTrust",
    "ChatAuthor",
    "NewsArticle",
    "ChatMessage",
    "Scenario",
    "ScenarioConfigError",
    "generate_scenario",
    "load_scenario_config",
    "default_scenario_config",
]
