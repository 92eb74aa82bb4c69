from .types import (
    EXPERIENCED_SUBTYPES,
    FeedbackBundle,
    GameDesignElement,
    InvestorType,
    KnowledgePool,
    Motivation,
    PoolValidationError,
    default_knowledge_pool,
    load_knowledge_pool,
)
from .pipeline import (
    LABEL_ORDER,
    PipelineConfig,
    PipelineError,
    PipelineModel,
    build_training_table,
    predict_type,
    train_pipeline,
)
from .feedback import select_resources, feedback_loop

__all__ = [
    "InvestorType",
    "EXPERIENCED_SUBTYPES",
    "GameDesignElement",
    "Motivation",
    "KnowledgePool",
    "PoolValidationError",
    "FeedbackBundle",
    "default_knowledge_pool",
    "load_knowledge_pool",
    "LABEL_ORDER",
    "PipelineConfig",
    "PipelineError",
    "PipelineModel",
    "build_training_table",
    "train_pipeline",
    "predict_type",
    "select_resources",
    "feedback_loop",
]
