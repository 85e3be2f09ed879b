"""K-nearest-neighbor classification under cosine similarity over sparse vectors."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .base import BaseEstimator, check_is_fitted
from .sparse import SparseVector


class KnnClassifier(BaseEstimator):
    """Cosine-similarity KNN.

    Similarity ties rank the lower training id first; a plurality-label tie
    goes to the label of the single most similar neighbor among the tied
    labels. A zero-norm vector has similarity 0 to everything.
    """

    def __init__(self, k: int = 3):
        self.k = k

    def fit(
        self,
        X: Sequence[SparseVector],
        y: Sequence[int],
        n_labels: int | None = None,
    ) -> "KnnClassifier":
        X = list(X)
        labels = np.asarray(y, dtype=np.int64)
        if len(X) != labels.size:
            raise ValueError(f"X and y lengths differ: {len(X)} vs {labels.size}")
        if not X:
            raise ValueError("cannot fit KNN on an empty training set")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.k > len(X):
            raise ValueError(f"k={self.k} exceeds training size {len(X)}")
        if labels.min() < 0:
            raise ValueError("label indices must be >= 0")
        if n_labels is None:
            n_labels = int(labels.max()) + 1
        elif labels.max() >= n_labels:
            raise ValueError("label index outside [0, n_labels)")
        self.vectors_ = tuple(X)
        self.labels_ = labels
        self.n_labels_ = n_labels
        self._index_vectors()
        return self

    def _index_vectors(self) -> None:
        self.norms_ = np.array([v.norm() for v in self.vectors_])
        columns: dict[int, tuple[list[int], list[float]]] = {}
        for row, vec in enumerate(self.vectors_):
            for idx, value in zip(vec.indices, vec.values):
                bucket = columns.setdefault(int(idx), ([], []))
                bucket[0].append(row)
                bucket[1].append(float(value))
        self._columns = {
            key: (np.asarray(rows, dtype=np.int64), np.asarray(vals, dtype=np.float64))
            for key, (rows, vals) in columns.items()
        }

    @classmethod
    def from_fitted(
        cls, params: dict, labels: Sequence[int], vectors: Sequence[SparseVector], n_labels: int
    ) -> "KnnClassifier":
        model = cls(**params)
        model.vectors_ = tuple(vectors)
        model.labels_ = np.asarray(labels, dtype=np.int64)
        model.n_labels_ = n_labels
        model._index_vectors()
        return model

    def similarities(self, x: SparseVector) -> np.ndarray:
        """Cosine similarity of x to every training vector."""
        check_is_fitted(self, "vectors_")
        n = len(self.vectors_)
        scores = np.zeros(n, dtype=np.float64)
        query_norm = x.norm()
        if query_norm == 0.0:
            return scores
        for idx, value in zip(x.indices, x.values):
            column = self._columns.get(int(idx))
            if column is not None:
                scores[column[0]] += column[1] * value
        sims = np.zeros(n, dtype=np.float64)
        np.divide(scores, self.norms_ * query_norm, out=sims, where=self.norms_ > 0.0)
        return sims

    def neighbors(self, x: SparseVector) -> np.ndarray:
        """Training ids of the k most similar vectors, best first."""
        sims = self.similarities(x)
        order = np.lexsort((np.arange(sims.size), -sims))
        return order[: self.k]

    def predict(self, x: SparseVector) -> int:
        top = self.neighbors(x)
        votes = np.bincount(self.labels_[top], minlength=self.n_labels_)
        best = votes.max()
        tied = {label for label in self.labels_[top] if votes[label] == best}
        if len(tied) == 1:
            return int(next(iter(tied)))
        for neighbor in top:
            if int(self.labels_[neighbor]) in tied:
                return int(self.labels_[neighbor])
        raise AssertionError("unreachable: tied labels come from the neighbor list")
