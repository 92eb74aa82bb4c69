"""Lloyd's k-means with k-means++ seeding and elbow-based k selection."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrix import FeatureMatrix


@dataclass
class KMeansModel:
    k: int
    centroids: np.ndarray  # (k, d)
    inertia: float  # sum of squared distances to nearest centroid
    n_iter: int
    inertia_history: list[float] = field(default_factory=list)

    def assign(self, values: np.ndarray) -> np.ndarray:
        d2 = _sq_dists(np.asarray(values, dtype=np.float64), self.centroids)
        return np.argmin(d2, axis=1)


def _as_array(X) -> np.ndarray:
    if isinstance(X, FeatureMatrix):
        return X.values
    return np.asarray(X, dtype=np.float64)


def _sq_dists(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    return ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)


def _kmeanspp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    closest = ((points - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = closest.sum()
        if total <= 0.0:
            centers[c] = points[rng.integers(n)]
            continue
        centers[c] = points[rng.choice(n, p=closest / total)]
        closest = np.minimum(closest, ((points - centers[c]) ** 2).sum(axis=1))
    return centers


def _lloyd(points: np.ndarray, centers: np.ndarray, max_iter: int, tol: float) -> KMeansModel:
    k = centers.shape[0]
    history: list[float] = []
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        d2 = _sq_dists(points, centers)
        assign = np.argmin(d2, axis=1)
        # Empty-cluster repair: hand the cluster the point farthest from its
        # current centroid, so no centroid ever goes NaN.
        for c in range(k):
            if not np.any(assign == c):
                worst = int(np.argmax(d2[np.arange(len(points)), assign]))
                assign[worst] = c
                d2[worst, :] = np.inf  # a repaired point is claimed once
        new_centers = np.vstack([points[assign == c].mean(axis=0) for c in range(k)])
        shift = np.sqrt(((new_centers - centers) ** 2).sum(axis=1)).max()
        centers = new_centers
        history.append(float(_sq_dists(points, centers).min(axis=1).sum()))
        if shift < tol:
            break
    inertia = float(_sq_dists(points, centers).min(axis=1).sum())
    return KMeansModel(k=k, centroids=centers, inertia=inertia, n_iter=n_iter, inertia_history=history)


def kmeans_fit(
    X,
    k: int,
    seed: int = 0,
    max_iter: int = 300,
    tol: float = 1e-6,
    n_init: int = 10,
) -> KMeansModel:
    """Lloyd's algorithm with k-means++ seeding, best of n_init restarts.

    Restart seeds are spawned deterministically from `seed`, so the whole fit
    is a pure function of (data, k, seed).
    """
    points = _as_array(X)
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range [1, {n}]")
    best: KMeansModel | None = None
    for child in np.random.SeedSequence(seed).spawn(n_init):
        rng = np.random.default_rng(child)
        centers = _kmeanspp_init(points, k, rng)
        model = _lloyd(points, centers, max_iter, tol)
        if best is None or model.inertia < best.inertia - 1e-12:
            best = model
    return best


def elbow_select(
    X,
    k_range=range(1, 9),
    seed: int = 0,
    max_iter: int = 300,
    tol: float = 1e-6,
    n_init: int = 10,
) -> tuple[int, list[tuple[int, float]]]:
    """Pick k at the sharpest bend of the inertia curve.

    Fits k-means for every k in the (contiguous, ascending) range and returns
    (chosen_k, curve) where chosen_k maximises the second difference
    inertia[k-1] - 2*inertia[k] + inertia[k+1] over interior ks.
    """
    ks = list(k_range)
    if len(ks) < 3:
        raise ValueError("k_range needs at least 3 values to have an interior point")
    if ks != list(range(ks[0], ks[-1] + 1)):
        raise ValueError("k_range must be a contiguous ascending range")
    points = _as_array(X)
    if ks[-1] > points.shape[0]:
        raise ValueError(f"largest k {ks[-1]} exceeds n={points.shape[0]}")
    curve = []
    for k in ks:
        model = kmeans_fit(points, k, seed=seed, max_iter=max_iter, tol=tol, n_init=n_init)
        curve.append((k, model.inertia))
    inertias = [v for _, v in curve]
    best_k, best_bend = ks[1], -np.inf
    for i in range(1, len(ks) - 1):
        bend = inertias[i - 1] - 2.0 * inertias[i] + inertias[i + 1]
        if bend > best_bend + 1e-12:
            best_k, best_bend = ks[i], bend
    return best_k, curve
