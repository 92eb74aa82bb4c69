"""Training pipeline: footprints -> scaling -> feature selection -> classifiers.

The pipeline standardizes the 17-metric table, ranks original features by
variance-weighted squared PCA loadings, keeps the top five, and trains one
classifier per configured kind on the reduced table. Reported accuracy is the
mean over stratified splits re-trained per split, which is the convention used
everywhere accuracies are quoted in this repo.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..mlcore.gbt import GradientBoostedTreesClassifier
from ..mlcore.matrix import FeatureMatrix
from ..mlcore.mlp import PerceptronClassifier
from ..mlcore.pca import PcaModel, pca_fit, pca_top_features
from ..mlcore.preprocess import accuracy, apply_standardize, standardize, stratified_split
from ..mlcore.tree import DecisionTreeClassifier
from ..rng import derive_seed
from ..session.footprint import METRIC_NAMES, DigitalFootprint
from .types import InvestorType

PIPELINE_SCHEMA = "pipeline/v1"

# Class ids are positions in this list; Experienced is the positive class.
LABEL_ORDER = ["Novice", "Experienced"]

CLASSIFIER_KINDS = ("DecisionTree", "GradientBoostedTrees", "Perceptron")


class PipelineError(ValueError):
    pass


def build_training_table(footprints: list[DigitalFootprint]) -> FeatureMatrix:
    """Stack footprints into an n x 17 matrix in the fixed metric order."""
    if not footprints:
        raise PipelineError("cannot build a training table from zero footprints")
    rows, labels, ids = [], [], []
    labeled = any(fp.label is not None for fp in footprints)
    for i, fp in enumerate(footprints):
        for m in METRIC_NAMES:
            if getattr(fp, m, None) is None:
                raise PipelineError(f"footprint {fp.session_id or i} missing metric {m!r}")
        rows.append(fp.vector())
        ids.append(fp.session_id or f"row-{i:04d}")
        if labeled:
            if fp.label not in LABEL_ORDER:
                raise PipelineError(f"footprint {fp.session_id or i} has unknown label {fp.label!r}")
            labels.append(LABEL_ORDER.index(fp.label))
    return FeatureMatrix(
        values=np.vstack(rows),
        col_names=list(METRIC_NAMES),
        labels=np.array(labels, dtype=np.int64) if labeled else None,
        row_ids=ids,
    )


@dataclass(frozen=True)
class PipelineConfig:
    classifiers: tuple[str, ...] = CLASSIFIER_KINDS
    n_features: int = 5
    # Components used for feature scoring. Summing weighted loadings over all
    # d components would give every standardized column the same score (its
    # total variance), so scoring has to stay on the dominant structure.
    pca_components: int = 2
    split_ratio: float = 0.7
    split_seeds: tuple[int, ...] = tuple(range(10))
    tree_max_depth: int = 5
    gbt_rounds: int = 100
    gbt_learning_rate: float = 0.1
    gbt_max_depth: int = 3
    mlp_hidden: tuple[int, ...] = (16,)
    mlp_epochs: int = 500
    mlp_lr: float = 0.05

    def to_dict(self) -> dict:
        return {
            "classifiers": list(self.classifiers),
            "n_features": self.n_features,
            "pca_components": self.pca_components,
            "split_ratio": self.split_ratio,
            "split_seeds": list(self.split_seeds),
            "tree_max_depth": self.tree_max_depth,
            "gbt_rounds": self.gbt_rounds,
            "gbt_learning_rate": self.gbt_learning_rate,
            "gbt_max_depth": self.gbt_max_depth,
            "mlp_hidden": list(self.mlp_hidden),
            "mlp_epochs": self.mlp_epochs,
            "mlp_lr": self.mlp_lr,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PipelineConfig":
        return cls(
            classifiers=tuple(d["classifiers"]),
            n_features=d["n_features"],
            pca_components=d["pca_components"],
            split_ratio=d["split_ratio"],
            split_seeds=tuple(d["split_seeds"]),
            tree_max_depth=d["tree_max_depth"],
            gbt_rounds=d["gbt_rounds"],
            gbt_learning_rate=d["gbt_learning_rate"],
            gbt_max_depth=d["gbt_max_depth"],
            mlp_hidden=tuple(d["mlp_hidden"]),
            mlp_epochs=d["mlp_epochs"],
            mlp_lr=d["mlp_lr"],
        )


@dataclass
class PipelineModel:
    col_names: list[str]
    mean: np.ndarray
    scale: np.ndarray
    pca: PcaModel
    selected_features: list[str]
    selected_idx: list[int]
    label_names: list[str]
    classifiers: dict = field(default_factory=dict)  # kind -> trained model
    accuracies: dict = field(default_factory=dict)  # kind -> mean split accuracy
    config: PipelineConfig = field(default_factory=PipelineConfig)

    def to_json(self) -> str:
        doc = {
            "schema": PIPELINE_SCHEMA,
            "col_names": self.col_names,
            "mean": self.mean.tolist(),
            "scale": self.scale.tolist(),
            "pca": self.pca.to_dict(),
            "selected_features": self.selected_features,
            "selected_idx": self.selected_idx,
            "label_names": self.label_names,
            "classifiers": {k: m.to_dict() for k, m in sorted(self.classifiers.items())},
            "accuracies": {k: v for k, v in sorted(self.accuracies.items())},
            "config": self.config.to_dict(),
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PipelineModel":
        doc = json.loads(text)
        if doc.get("schema") != PIPELINE_SCHEMA:
            raise PipelineError(f"unsupported pipeline schema: {doc.get('schema')!r}")
        classifiers = {}
        for kind, params in doc["classifiers"].items():
            classifiers[kind] = _CLASSIFIER_LOADERS[kind](params)
        return cls(
            col_names=doc["col_names"],
            mean=np.array(doc["mean"], dtype=np.float64),
            scale=np.array(doc["scale"], dtype=np.float64),
            pca=PcaModel.from_dict(doc["pca"]),
            selected_features=doc["selected_features"],
            selected_idx=doc["selected_idx"],
            label_names=doc["label_names"],
            classifiers=classifiers,
            accuracies=doc["accuracies"],
            config=PipelineConfig.from_dict(doc["config"]),
        )


_CLASSIFIER_LOADERS = {
    "DecisionTree": DecisionTreeClassifier.from_dict,
    "GradientBoostedTrees": GradientBoostedTreesClassifier.from_dict,
    "Perceptron": PerceptronClassifier.from_dict,
}


def _make_classifier(kind: str, config: PipelineConfig, seed: int):
    if kind == "DecisionTree":
        return DecisionTreeClassifier(max_depth=config.tree_max_depth)
    if kind == "GradientBoostedTrees":
        return GradientBoostedTreesClassifier(
            n_rounds=config.gbt_rounds,
            learning_rate=config.gbt_learning_rate,
            max_depth=config.gbt_max_depth,
        )
    if kind == "Perceptron":
        return PerceptronClassifier(
            hidden=config.mlp_hidden,
            epochs=config.mlp_epochs,
            lr=config.mlp_lr,
            seed=seed,
        )
    raise PipelineError(f"unknown classifier kind {kind!r}")


def train_pipeline(table: FeatureMatrix, config: PipelineConfig | None = None, seed: int = 0) -> PipelineModel:
    """Fit the full personalization pipeline on a labeled footprint table."""
    config = config or PipelineConfig()
    if not config.classifiers:
        raise PipelineError("config names no classifier kinds")
    unknown = [k for k in config.classifiers if k not in CLASSIFIER_KINDS]
    if unknown:
        raise PipelineError(f"unknown classifier kind(s): {unknown}")
    if table.labels is None:
        raise PipelineError("train_pipeline requires a labeled table")

    try:
        table_std, mean, scale = standardize(table)
        pca = pca_fit(
            table_std, k=min(config.pca_components, table.n - 1, table.d), mean=mean, scale=scale
        )
        selected = pca_top_features(pca, config.n_features)
    except ValueError as exc:
        raise PipelineError(f"feature extraction failed: {exc}") from exc
    selected_idx = [table.col_names.index(nm) for nm in selected]
    reduced = table_std.select_columns(selected)

    label_ids = sorted(np.unique(table.labels).tolist())
    label_names = [LABEL_ORDER[i] if i < len(LABEL_ORDER) else str(i) for i in label_ids]

    classifiers, accuracies = {}, {}
    for kind in config.classifiers:
        scores = []
        for split_seed in config.split_seeds:
            train, test = stratified_split(reduced, ratio=config.split_ratio, seed=split_seed)
            clf = _make_classifier(kind, config, seed=derive_seed(seed, split_seed))
            try:
                clf.fit(train.values, train.labels)
            except ValueError as exc:
                raise PipelineError(f"{kind} training failed: {exc}") from exc
            scores.append(accuracy(clf, test))
        final = _make_classifier(kind, config, seed=seed)
        final.fit(reduced.values, reduced.labels)
        classifiers[kind] = final
        accuracies[kind] = float(np.mean(scores))

    return PipelineModel(
        col_names=list(table.col_names),
        mean=mean,
        scale=scale,
        pca=pca,
        selected_features=selected,
        selected_idx=selected_idx,
        label_names=label_names,
        classifiers=classifiers,
        accuracies=accuracies,
        config=config,
    )


def predict_type(
    model: PipelineModel, footprint: DigitalFootprint, classifier_kind: str = "Perceptron"
) -> tuple[InvestorType, float]:
    """Predict the investor type of one footprint with the chosen classifier.

    Total over schema-valid footprints: any finite 17-vector gets a prediction.
    Confidence is the predicted class probability (softmax for the perceptron,
    sigmoid margin for boosting, leaf class fraction for the tree).
    """
    if classifier_kind not in model.classifiers:
        raise PipelineError(
            f"unknown classifier kind {classifier_kind!r}; trained: {sorted(model.classifiers)}"
        )
    vec = footprint.vector()
    std = apply_standardize(vec, model.mean, model.scale)
    reduced = std[model.selected_idx]
    class_id, confidence = model.classifiers[classifier_kind].predict_one(reduced)
    name = model.label_names[class_id] if class_id < len(model.label_names) else LABEL_ORDER[class_id]
    return InvestorType(value=name), float(confidence)
