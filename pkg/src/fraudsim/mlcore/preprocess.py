"""Standardisation, stratified splitting and accuracy scoring."""

from __future__ import annotations

import numpy as np

from .matrix import FeatureMatrix


def standardize(X: FeatureMatrix) -> tuple[FeatureMatrix, np.ndarray, np.ndarray]:
    """Center each column to mean 0 and scale to population std 1.

    Zero-variance columns are centered and left unscaled (scale recorded as 1)
    so downstream projections stay finite.
    """
    if X.n < 2:
        raise ValueError(f"standardize needs at least 2 rows, got {X.n}")
    mean = X.values.mean(axis=0)
    std = X.values.std(axis=0)  # population std (ddof=0)
    scale = np.where(std > 0.0, std, 1.0)
    out = FeatureMatrix(
        values=(X.values - mean) / scale,
        col_names=list(X.col_names),
        labels=None if X.labels is None else X.labels.copy(),
        row_ids=None if X.row_ids is None else list(X.row_ids),
    )
    return out, mean, scale


def apply_standardize(values: np.ndarray, mean: np.ndarray, scale: np.ndarray) -> np.ndarray:
    return (np.asarray(values, dtype=np.float64) - mean) / scale


def stratified_split(
    X: FeatureMatrix, ratio: float = 0.7, seed: int = 0
) -> tuple[FeatureMatrix, FeatureMatrix]:
    """Per-class shuffled split; floor(ratio * class size) rows go to train.

    Every class keeps at least one row on each side, so classes of a single
    member are rejected, as are ratios that would empty either side.
    """
    if X.labels is None:
        raise ValueError("stratified_split requires labels")
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"ratio must be in (0,1), got {ratio}")
    rng = np.random.default_rng(seed)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for cls in np.unique(X.labels):
        members = np.flatnonzero(X.labels == cls)
        if members.size < 2:
            raise ValueError(f"class {cls} has {members.size} member(s); need >= 2")
        members = members[rng.permutation(members.size)]
        n_train = int(np.floor(ratio * members.size))
        n_train = min(max(n_train, 1), members.size - 1)
        train_idx.extend(members[:n_train].tolist())
        test_idx.extend(members[n_train:].tolist())
    return X.take_rows(train_idx), X.take_rows(test_idx)


def accuracy(classifier, test: FeatureMatrix) -> float:
    """Fraction of test rows the classifier labels correctly."""
    if test.labels is None:
        raise ValueError("accuracy requires labeled test data")
    if test.n == 0:
        raise ValueError("accuracy requires a non-empty test set")
    pred = classifier.predict(test.values)
    return float(np.mean(pred == test.labels))
