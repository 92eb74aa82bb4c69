"""Versioned JSON serialization for trained models.

Floats go through json's repr-based formatting, so save -> load -> save is
byte-identical and golden model files stay stable.
"""

from __future__ import annotations

import json
from pathlib import Path

from .gbt import GradientBoostedTreesClassifier
from .mlp import PerceptronClassifier
from .tree import DecisionTreeClassifier

MODEL_SCHEMA = "model/v1"

_KINDS = {
    DecisionTreeClassifier.kind: DecisionTreeClassifier,
    GradientBoostedTreesClassifier.kind: GradientBoostedTreesClassifier,
    PerceptronClassifier.kind: PerceptronClassifier,
}


def model_to_json(model) -> str:
    kind = getattr(model, "kind", None)
    if kind not in _KINDS:
        raise ValueError(f"unknown model kind: {kind!r}")
    return json.dumps({"schema": MODEL_SCHEMA, "kind": kind, "params": model.to_dict()}, indent=2)


def model_from_json(text: str):
    doc = json.loads(text)
    if doc.get("schema") != MODEL_SCHEMA:
        raise ValueError(f"unsupported model schema: {doc.get('schema')!r}")
    kind = doc.get("kind")
    if kind not in _KINDS:
        raise ValueError(f"unknown model kind: {kind!r}")
    return _KINDS[kind].from_dict(doc["params"])


def save_model(model, path: str | Path) -> None:
    Path(path).write_text(model_to_json(model), encoding="utf-8")


def load_model(path: str | Path):
    return model_from_json(Path(path).read_text(encoding="utf-8"))
