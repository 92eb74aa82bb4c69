"""Gradient boosting on logistic loss for binary labels.

Each round fits a least-squares regression tree to the negative gradient
(label minus predicted probability) and moves the score by learning_rate times
the tree output. With leaf values equal to mean residuals this is a projected
gradient step, so the training logistic loss is non-increasing round by round
for any learning rate below 8.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_TIE_EPS = 1e-12
_PROB_CLIP = 1e-12


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


def _log_loss(y: np.ndarray, p: np.ndarray) -> float:
    p = np.clip(p, _PROB_CLIP, 1.0 - _PROB_CLIP)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


@dataclass
class _RegNode:
    value: float
    feature: int | None = None
    threshold: float | None = None
    left: "._RegNode | None" = None
    right: "._RegNode | None" = None

    def to_dict(self) -> dict:
        d = {"value": self.value}
        if self.feature is not None:
            d.update(
                feature=self.feature,
                threshold=self.threshold,
                left=self.left.to_dict(),
                right=self.right.to_dict(),
            )
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "_RegNode":
        node = cls(value=d["value"])
        if "feature" in d:
            node.feature = d["feature"]
            node.threshold = d["threshold"]
            node.left = cls.from_dict(d["left"])
            node.right = cls.from_dict(d["right"])
        return node


def _best_sse_split(X: np.ndarray, r: np.ndarray, min_leaf: int):
    n = len(r)
    best = None
    sse_parent = float(((r - r.mean()) ** 2).sum())
    for f in range(X.shape[1]):
        order = np.argsort(X[:, f], kind="stable")
        xs, rs = X[order, f], r[order]
        prefix = np.cumsum(rs)
        prefix_sq = np.cumsum(rs**2)
        total, total_sq = prefix[-1], prefix_sq[-1]
        for i in range(n - 1):
            if xs[i] == xs[i + 1]:
                continue
            n_left = i + 1
            n_right = n - n_left
            if n_left < min_leaf or n_right < min_leaf:
                continue
            sum_l, sq_l = prefix[i], prefix_sq[i]
            sum_r, sq_r = total - sum_l, total_sq - sq_l
            sse = (sq_l - sum_l**2 / n_left) + (sq_r - sum_r**2 / n_right)
            gain = sse_parent - sse
            if best is None or gain > best[0] + _TIE_EPS:
                best = (gain, f, (xs[i] + xs[i + 1]) / 2.0)
    if best is None or best[0] <= _TIE_EPS:
        return None
    return best


def _fit_reg_tree(X: np.ndarray, r: np.ndarray, max_depth: int, min_leaf: int, depth: int = 0) -> _RegNode:
    node = _RegNode(value=float(r.mean()))
    if depth >= max_depth or len(r) < 2 * min_leaf:
        return node
    split = _best_sse_split(X, r, min_leaf)
    if split is None:
        return node
    _, f, t = split
    mask = X[:, f] <= t
    node.feature, node.threshold = f, t
    node.left = _fit_reg_tree(X[mask], r[mask], max_depth, min_leaf, depth + 1)
    node.right = _fit_reg_tree(X[~mask], r[~mask], max_depth, min_leaf, depth + 1)
    return node


def _reg_predict(node: _RegNode, X: np.ndarray) -> np.ndarray:
    out = np.empty(len(X))
    for i, x in enumerate(X):
        cur = node
        while cur.feature is not None:
            cur = cur.left if x[cur.feature] <= cur.threshold else cur.right
        out[i] = cur.value
    return out


class GradientBoostedTreesClassifier:
    kind = "GradientBoostedTrees"

    def __init__(
        self,
        n_rounds: int = 100,
        learning_rate: float = 0.1,
        max_depth: int = 3,
        min_leaf: int = 1,
    ):
        self.n_rounds = n_rounds
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.min_leaf = min_leaf
        self.base_score: float = 0.0  # initial log-odds
        self.trees: list[_RegNode] = []
        self.loss_history: list[float] = []

    def fit(self, X: np.ndarray, y: np.ndarray) -> "GradientBoostedTreesClassifier":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if not set(np.unique(y)).issubset({0, 1}):
            raise ValueError("gradient boosting here is binary: labels must be 0/1")
        yf = y.astype(np.float64)
        p = float(np.clip(yf.mean(), _PROB_CLIP, 1.0 - _PROB_CLIP))
        self.base_score = float(np.log(p / (1.0 - p)))
        self.trees = []
        scores = np.full(len(y), self.base_score)
        self.loss_history = [_log_loss(yf, _sigmoid(scores))]
        if len(np.unique(y)) < 2:
            # Degenerate single-class data: keep the prior and skip boosting.
            return self
        for _ in range(self.n_rounds):
            residuals = yf - _sigmoid(scores)
            tree = _fit_reg_tree(X, residuals, self.max_depth, self.min_leaf)
            scores = scores + self.learning_rate * _reg_predict(tree, X)
            self.trees.append(tree)
            self.loss_history.append(_log_loss(yf, _sigmoid(scores)))
        return self

    def decision_scores(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        scores = np.full(len(X), self.base_score)
        for tree in self.trees:
            scores += self.learning_rate * _reg_predict(tree, X)
        return scores

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (_sigmoid(self.decision_scores(X)) >= 0.5).astype(np.int64)

    def predict_one(self, x: np.ndarray) -> tuple[int, float]:
        """Predicted class and its sigmoid-margin probability."""
        p = float(_sigmoid(self.decision_scores(np.atleast_2d(x)))[0])
        return (1, p) if p >= 0.5 else (0, 1.0 - p)

    def to_dict(self) -> dict:
        return {
            "n_rounds": self.n_rounds,
            "learning_rate": self.learning_rate,
            "max_depth": self.max_depth,
            "min_leaf": self.min_leaf,
            "base_score": self.base_score,
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GradientBoostedTreesClassifier":
        clf = cls(
            n_rounds=d["n_rounds"],
            learning_rate=d["learning_rate"],
            max_depth=d["max_depth"],
            min_leaf=d["min_leaf"],
        )
        clf.base_score = d["base_score"]
        clf.trees = [_RegNode.from_dict(t) for t in d["trees"]]
        return clf
