"""Principal component analysis via symmetric eigendecomposition.

The covariance is d x d (d = 17 here), so eigh is cheap and exact; tests
cross-check the components against a power-iteration-with-deflation oracle.
Feature ranking uses variance-weighted squared loadings, which scores the
original named metrics rather than abstract components.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import FeatureMatrix


@dataclass
class PcaModel:
    mean: np.ndarray  # d, from the upstream standardizer (zeros if input raw-centered)
    scale: np.ndarray  # d, per-feature std or substituted 1
    components: np.ndarray  # (k, d), rows orthonormal
    explained_variance: np.ndarray  # (k,), non-increasing
    col_names: list[str]

    def to_dict(self) -> dict:
        return {
            "mean": self.mean.tolist(),
            "scale": self.scale.tolist(),
            "components": self.components.tolist(),
            "explained_variance": self.explained_variance.tolist(),
            "col_names": list(self.col_names),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PcaModel":
        return cls(
            mean=np.array(d["mean"], dtype=np.float64),
            scale=np.array(d["scale"], dtype=np.float64),
            components=np.array(d["components"], dtype=np.float64),
            explained_variance=np.array(d["explained_variance"], dtype=np.float64),
            col_names=list(d["col_names"]),
        )


def pca_fit(
    X: FeatureMatrix,
    k: int,
    mean: np.ndarray | None = None,
    scale: np.ndarray | None = None,
) -> PcaModel:
    """Fit the top-k principal components of an (already standardized) matrix.

    mean/scale, when given, record the upstream standardizer so the model is
    self-contained for projecting raw vectors later.

    Sign convention: the largest-magnitude coordinate of each component is
    made positive, so fits are reproducible across eigensolvers.
    """
    n, d = X.values.shape
    if not 1 <= k <= min(n - 1, d):
        raise ValueError(f"k={k} out of range [1, {min(n - 1, d)}]")
    centered = X.values - X.values.mean(axis=0)
    cov = centered.T @ centered / (n - 1)  # sample covariance
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1][:k]
    components = eigvecs[:, order].T.copy()
    explained = np.clip(eigvals[order], 0.0, None)
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return PcaModel(
        mean=np.zeros(d) if mean is None else np.asarray(mean, dtype=np.float64),
        scale=np.ones(d) if scale is None else np.asarray(scale, dtype=np.float64),
        components=components,
        explained_variance=explained,
        col_names=list(X.col_names),
    )


def pca_transform(model: PcaModel, values: np.ndarray) -> np.ndarray:
    """Project standardized rows onto the fitted components."""
    return np.asarray(values, dtype=np.float64) @ model.components.T


def pca_top_features(model: PcaModel, m: int) -> list[str]:
    """Rank original features by sum_j explained_variance[j] * loading[j,f]^2.

    Ties break toward the lower column index, and m = d returns a permutation
    of all names.
    """
    d = model.components.shape[1]
    if not 1 <= m <= d:
        raise ValueError(f"m={m} out of range [1, {d}]")
    scores = model.explained_variance @ (model.components**2)
    ranked = sorted(range(d), key=lambda f: (-scores[f], f))
    return [model.col_names[f] for f in ranked[:m]]
