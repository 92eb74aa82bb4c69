"""Multilayer perceptron: ReLU hidden layers, softmax output, cross-entropy.

Training is full-batch gradient descent from a Glorot-uniform init drawn from
a seeded generator, so a fit is a pure function of (data, hyperparameters,
seed). The loss/gradient pair is exposed so tests can check the analytic
gradient against central finite differences.
"""

from __future__ import annotations

import numpy as np


def _relu(z: np.ndarray) -> np.ndarray:
    return np.maximum(z, 0.0)


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


class PerceptronClassifier:
    kind = "Perceptron"

    def __init__(
        self,
        hidden: tuple[int, ...] = (16,),
        epochs: int = 500,
        lr: float = 0.01,
        seed: int = 0,
    ):
        self.hidden = tuple(hidden)
        self.epochs = epochs
        self.lr = lr
        self.seed = seed
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        self.n_classes: int = 0
        self.loss_history: list[float] = []

    def _init_params(self, d: int, c: int) -> None:
        rng = np.random.default_rng(self.seed)
        dims = [d, *self.hidden, c]
        self.weights, self.biases = [], []
        for fan_in, fan_out in zip(dims[:-1], dims[1:]):
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            self.weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
            self.biases.append(np.zeros(fan_out))

    def _forward(self, X: np.ndarray) -> list[np.ndarray]:
        """Activations per layer; last entry is the softmax output."""
        acts = [X]
        for i, (W, b) in enumerate(zip(self.weights, self.biases)):
            z = acts[-1] @ W + b
            acts.append(_softmax(z) if i == len(self.weights) - 1 else _relu(z))
        return acts

    @staticmethod
    def _loss(probs: np.ndarray, onehot: np.ndarray) -> float:
        p = np.clip(probs, 1e-12, None)
        return float(-np.sum(onehot * np.log(p)) / len(onehot))

    def loss_and_grads(self, X: np.ndarray, onehot: np.ndarray):
        """Mean cross-entropy and its gradients w.r.t. every weight and bias."""
        acts = self._forward(X)
        probs = acts[-1]
        n = len(X)
        delta = (probs - onehot) / n
        grads_w, grads_b = [], []
        for i in range(len(self.weights) - 1, -1, -1):
            grads_w.insert(0, acts[i].T @ delta)
            grads_b.insert(0, delta.sum(axis=0))
            if i > 0:
                delta = (delta @ self.weights[i].T) * (acts[i] > 0.0)
        return self._loss(probs, onehot), grads_w, grads_b

    def fit(self, X: np.ndarray, y: np.ndarray) -> "PerceptronClassifier":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if len(X) < 2:
            raise ValueError("perceptron fit needs at least 2 rows")
        self.n_classes = int(y.max()) + 1
        onehot = np.eye(self.n_classes)[y]
        self._init_params(X.shape[1], self.n_classes)
        self.loss_history = []
        for _ in range(self.epochs):
            loss, grads_w, grads_b = self.loss_and_grads(X, onehot)
            self.loss_history.append(loss)
            for i in range(len(self.weights)):
                self.weights[i] -= self.lr * grads_w[i]
                self.biases[i] -= self.lr * grads_b[i]
        self.loss_history.append(self._loss(self._forward(X)[-1], onehot))
        return self

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return self._forward(X)[-1]

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.argmax(self.predict_proba(X), axis=1).astype(np.int64)

    def predict_one(self, x: np.ndarray) -> tuple[int, float]:
        """Predicted class and its softmax probability."""
        probs = self.predict_proba(np.atleast_2d(x))[0]
        cls = int(np.argmax(probs))
        return cls, float(probs[cls])

    def to_dict(self) -> dict:
        return {
            "hidden": list(self.hidden),
            "epochs": self.epochs,
            "lr": self.lr,
            "seed": self.seed,
            "n_classes": self.n_classes,
            "weights": [w.tolist() for w in self.weights],
            "biases": [b.tolist() for b in self.biases],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PerceptronClassifier":
        clf = cls(hidden=tuple(d["hidden"]), epochs=d["epochs"], lr=d["lr"], seed=d["seed"])
        clf.n_classes = d["n_classes"]
        clf.weights = [np.array(w, dtype=np.float64) for w in d["weights"]]
        clf.biases = [np.array(b, dtype=np.float64) for b in d["biases"]]
        return clf
