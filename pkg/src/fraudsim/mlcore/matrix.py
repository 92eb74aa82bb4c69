"""Feature matrix with named columns and delimited-text round-tripping.

The on-disk format is plain CSV: optional session_id column, one column per
feature in order, optional label column. Floats are written with repr so a
read-back matrix is bit-identical to the one written.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


@dataclass
class FeatureMatrix:
    values: np.ndarray  # (n, d) float64
    col_names: list[str]
    labels: np.ndarray | None = None  # (n,) int class ids
    row_ids: list[str] | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise ValueError(f"expected 2-D values, got shape {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("feature matrix contains non-finite values")
        if len(self.col_names) != self.values.shape[1]:
            raise ValueError("col_names length does not match number of columns")
        if len(set(self.col_names)) != len(self.col_names):
            raise ValueError("col_names must be unique")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if self.labels.shape != (self.values.shape[0],):
                raise ValueError("labels length does not match number of rows")
        if self.row_ids is not None and len(self.row_ids) != self.values.shape[0]:
            raise ValueError("row_ids length does not match number of rows")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def col(self, name: str) -> np.ndarray:
        return self.values[:, self.col_names.index(name)]

    def select_columns(self, names: list[str]) -> "FeatureMatrix":
        idx = [self.col_names.index(nm) for nm in names]
        return FeatureMatrix(
            values=self.values[:, idx].copy(),
            col_names=list(names),
            labels=None if self.labels is None else self.labels.copy(),
            row_ids=None if self.row_ids is None else list(self.row_ids),
        )

    def take_rows(self, idx) -> "FeatureMatrix":
        idx = np.asarray(idx, dtype=np.int64)
        return FeatureMatrix(
            values=self.values[idx].copy(),
            col_names=list(self.col_names),
            labels=None if self.labels is None else self.labels[idx].copy(),
            row_ids=None if self.row_ids is None else [self.row_ids[i] for i in idx],
        )

    def equals(self, other: "FeatureMatrix") -> bool:
        if self.col_names != other.col_names or self.values.shape != other.values.shape:
            return False
        if not np.array_equal(self.values, other.values):
            return False
        if (self.labels is None) != (other.labels is None):
            return False
        if self.labels is not None and not np.array_equal(self.labels, other.labels):
            return False
        return True

    def write_csv(self, path: str | Path) -> None:
        header = []
        if self.row_ids is not None:
            header.append("session_id")
        header.extend(self.col_names)
        if self.labels is not None:
            header.append("label")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for i in range(self.n):
                row = []
                if self.row_ids is not None:
                    row.append(self.row_ids[i])
                row.extend(repr(float(v)) for v in self.values[i])
                if self.labels is not None:
                    row.append(str(int(self.labels[i])))
                w.writerow(row)

    @classmethod
    def read_csv(cls, path: str | Path) -> "FeatureMatrix":
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows:
            raise ValueError(f"empty feature matrix file: {path}")
        header = rows[0]
        has_ids = header and header[0] == "session_id"
        has_labels = header and header[-1] == "label"
        lo = 1 if has_ids else 0
        hi = len(header) - 1 if has_labels else len(header)
        col_names = header[lo:hi]
        values, labels, row_ids = [], [], []
        for row in rows[1:]:
            if has_ids:
                row_ids.append(row[0])
            values.append([float(v) for v in row[lo:hi]])
            if has_labels:
                labels.append(int(row[-1]))
        return cls(
            values=np.array(values, dtype=np.float64).reshape(len(values), len(col_names)),
            col_names=col_names,
            labels=np.array(labels, dtype=np.int64) if has_labels else None,
            row_ids=row_ids if has_ids else None,
        )
