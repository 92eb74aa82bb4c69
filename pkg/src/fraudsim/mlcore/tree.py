"""CART decision tree with Gini impurity.

Candidate thresholds sit at midpoints between consecutive distinct sorted
values; the best (feature, threshold) maximises impurity decrease with ties
broken toward the lowest feature index, then the lowest threshold. Leaves
predict the majority class, ties toward the lowest class id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_TIE_EPS = 1e-12


@dataclass
class _Node:
    counts: np.ndarray  # class counts at this node
    feature: int | None = None
    threshold: float | None = None
    left: "._Node | None" = None
    right: "._Node | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def prediction(self) -> int:
        return int(np.argmax(self.counts))  # argmax picks the lowest id on ties

    def confidence(self) -> float:
        total = self.counts.sum()
        return float(self.counts[self.prediction()] / total) if total else 0.0

    def to_dict(self) -> dict:
        d = {"counts": self.counts.tolist()}
        if not self.is_leaf:
            d.update(
                feature=self.feature,
                threshold=self.threshold,
                left=self.left.to_dict(),
                right=self.right.to_dict(),
            )
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "_Node":
        node = cls(counts=np.array(d["counts"], dtype=np.float64))
        if "feature" in d:
            node.feature = d["feature"]
            node.threshold = d["threshold"]
            node.left = cls.from_dict(d["left"])
            node.right = cls.from_dict(d["right"])
        return node


def _gini(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return float(1.0 - (p**2).sum())


def _best_split(X: np.ndarray, y: np.ndarray, n_classes: int, min_leaf: int):
    """Return (gain, feature, threshold) of the best midpoint split, or None."""
    n = len(y)
    parent = np.bincount(y, minlength=n_classes).astype(np.float64)
    parent_gini = _gini(parent)
    best = None
    for f in range(X.shape[1]):
        order = np.argsort(X[:, f], kind="stable")
        xs, ys = X[order, f], y[order]
        # walk boundaries between consecutive distinct values
        left = np.zeros(n_classes)
        for i in range(n - 1):
            left[ys[i]] += 1
            if xs[i] == xs[i + 1]:
                continue
            n_left = i + 1
            n_right = n - n_left
            if n_left < min_leaf or n_right < min_leaf:
                continue
            right = parent - left
            gain = parent_gini - (n_left * _gini(left) + n_right * _gini(right)) / n
            threshold = (xs[i] + xs[i + 1]) / 2.0
            if best is None or gain > best[0] + _TIE_EPS:
                best = (gain, f, threshold)
    # Zero-gain splits are still taken on impure nodes (XOR-style patterns need
    # them); children are strictly smaller, so recursion always terminates.
    return best


class DecisionTreeClassifier:
    kind = "DecisionTree"

    def __init__(self, max_depth: int | None = None, min_leaf: int = 1):
        self.max_depth = max_depth
        self.min_leaf = min_leaf
        self.n_classes: int = 0
        self.root: _Node | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "DecisionTreeClassifier":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if X.size == 0 or len(y) == 0:
            raise ValueError("cannot fit a tree on an empty matrix")
        self.n_classes = int(y.max()) + 1
        self.root = self._build(X, y, depth=0)
        return self

    def _build(self, X, y, depth):
        counts = np.bincount(y, minlength=self.n_classes).astype(np.float64)
        node = _Node(counts=counts)
        if (
            len(y) < 2 * self.min_leaf
            or np.count_nonzero(counts) <= 1
            or (self.max_depth is not None and depth >= self.max_depth)
        ):
            return node
        split = _best_split(X, y, self.n_classes, self.min_leaf)
        if split is None:
            return node
        _, f, t = split
        mask = X[:, f] <= t
        node.feature, node.threshold = f, t
        node.left = self._build(X[mask], y[mask], depth + 1)
        node.right = self._build(X[~mask], y[~mask], depth + 1)
        return node

    def _leaf(self, x: np.ndarray) -> _Node:
        node = self.root
        while not node.is_leaf:
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return np.array([self._leaf(x).prediction() for x in X], dtype=np.int64)

    def predict_one(self, x: np.ndarray) -> tuple[int, float]:
        """Predicted class and the leaf's class fraction as confidence."""
        leaf = self._leaf(np.asarray(x, dtype=np.float64))
        return leaf.prediction(), leaf.confidence()

    def to_dict(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "min_leaf": self.min_leaf,
            "n_classes": self.n_classes,
            "root": self.root.to_dict() if self.root else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DecisionTreeClassifier":
        clf = cls(max_depth=d["max_depth"], min_leaf=d["min_leaf"])
        clf.n_classes = d["n_classes"]
        clf.root = _Node.from_dict(d["root"]) if d["root"] else None
        return clf
