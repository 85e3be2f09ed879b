"""Random forest over sparse vectors: Gini decision trees on bootstrap resamples.

Each tree trains on a bootstrap resample of size N (with replacement). At
every node ceil(sqrt(F)) candidate features are sampled without replacement;
the best split minimizes the weighted child Gini impurity over midpoints of
consecutive distinct observed values. A node becomes a leaf when it is pure
or no candidate feature varies on its samples; absent sparse entries read as
0.0 everywhere.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .base import BaseEstimator, check_is_fitted
from .sparse import SparseVector

_LEAF = -1


class _Tree:
    """Flat node arrays; node 0 is the root.

    ``feature[i] == _LEAF`` marks a leaf whose class distribution is
    ``dist[i]``; internal nodes route x[feature] <= threshold to ``left``.
    """

    __slots__ = ("feature", "threshold", "left", "right", "dist")

    def __init__(self) -> None:
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.dist: list[np.ndarray | None] = []

    def add_node(self) -> int:
        self.feature.append(_LEAF)
        self.threshold.append(0.0)
        self.left.append(_LEAF)
        self.right.append(_LEAF)
        self.dist.append(None)
        return len(self.feature) - 1

    def predict(self, x: SparseVector) -> int:
        node = 0
        while self.feature[node] != _LEAF:
            if x.value_at(self.feature[node]) <= self.threshold[node]:
                node = self.left[node]
            else:
                node = self.right[node]
        return int(np.argmax(self.dist[node]))

    def to_payload(self) -> list[dict]:
        nodes: list[dict] = []
        for i in range(len(self.feature)):
            if self.feature[i] == _LEAF:
                nodes.append({"d": [float(v) for v in self.dist[i]]})
            else:
                nodes.append(
                    {"f": self.feature[i], "t": self.threshold[i], "l": self.left[i], "r": self.right[i]}
                )
        return nodes

    @classmethod
    def from_payload(cls, nodes: Sequence[dict]) -> "_Tree":
        tree = cls()
        for node in nodes:
            slot = tree.add_node()
            if "d" in node:
                tree.dist[slot] = np.asarray(node["d"], dtype=np.float64)
            else:
                tree.feature[slot] = int(node["f"])
                tree.threshold[slot] = float(node["t"])
                tree.left[slot] = int(node["l"])
                tree.right[slot] = int(node["r"])
        return tree


class RandomForest(BaseEstimator):
    """Bootstrap ensemble of Gini decision trees with majority voting."""

    def __init__(self, n_trees: int = 100, seed: int = 0):
        self.n_trees = n_trees
        self.seed = seed

    def fit(
        self,
        X: Sequence[SparseVector],
        y: Sequence[int],
        n_labels: int | None = None,
        n_features: int | None = None,
    ) -> "RandomForest":
        if self.n_trees < 1:
            raise ValueError(f"n_trees must be >= 1, got {self.n_trees}")
        X = list(X)
        labels = np.asarray(y, dtype=np.int64)
        if len(X) != labels.size:
            raise ValueError(f"X and y lengths differ: {len(X)} vs {labels.size}")
        if len(X) < 2:
            raise ValueError("training requires at least 2 samples")
        if labels.min() < 0:
            raise ValueError("label indices must be >= 0")
        if n_labels is None:
            n_labels = int(labels.max()) + 1
        elif labels.max() >= n_labels:
            raise ValueError("label index outside [0, n_labels)")
        max_index = max((int(v.indices[-1]) for v in X if v.nnz), default=-1)
        if n_features is None:
            n_features = max_index + 1
        elif max_index >= n_features:
            raise ValueError("feature index outside [0, n_features)")
        if n_features < 1:
            raise ValueError("training requires at least one feature column")
        for i, vec in enumerate(X):
            if vec.nnz and not np.all(np.isfinite(vec.values)):
                raise ValueError(f"sample {i} contains non-finite feature values")

        columns = _column_store(X)
        n_samples = len(X)
        n_candidates = min(n_features, math.ceil(math.sqrt(n_features)))
        master = np.random.RandomState(self.seed)
        tree_seeds = master.randint(0, 2**31 - 1, size=self.n_trees)
        self.trees_ = tuple(
            _build_tree(columns, labels, n_samples, n_features, n_candidates, n_labels, int(s))
            for s in tree_seeds
        )
        self.n_labels_ = n_labels
        self.n_features_ = n_features
        return self

    @classmethod
    def from_fitted(cls, params: dict, n_labels: int, n_features: int, trees: Sequence[list]) -> "RandomForest":
        forest = cls(**params)
        forest.trees_ = tuple(_Tree.from_payload(nodes) for nodes in trees)
        forest.n_labels_ = n_labels
        forest.n_features_ = n_features
        return forest

    def tree_votes(self, x: SparseVector) -> list[int]:
        check_is_fitted(self, "trees_")
        return [tree.predict(x) for tree in self.trees_]

    def predict(self, x: SparseVector) -> int:
        votes = np.bincount(self.tree_votes(x), minlength=self.n_labels_)
        return int(np.argmax(votes))


def _column_store(X: Sequence[SparseVector]) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """Per-feature (row ids, values) arrays over the nonzero entries of X."""
    rows: dict[int, list[int]] = {}
    vals: dict[int, list[float]] = {}
    for row, vec in enumerate(X):
        for idx, value in zip(vec.indices, vec.values):
            key = int(idx)
            rows.setdefault(key, []).append(row)
            vals.setdefault(key, []).append(float(value))
    return {
        key: (np.asarray(rows[key], dtype=np.int64), np.asarray(vals[key], dtype=np.float64))
        for key in rows
    }


def _build_tree(
    columns: dict[int, tuple[np.ndarray, np.ndarray]],
    y: np.ndarray,
    n_samples: int,
    n_features: int,
    n_candidates: int,
    n_labels: int,
    seed: int,
) -> _Tree:
    rng = np.random.RandomState(seed)
    bootstrap = rng.randint(0, n_samples, size=n_samples)
    feature_urn = np.arange(n_features, dtype=np.int64)
    tree = _Tree()
    root = tree.add_node()
    stack: list[tuple[int, np.ndarray]] = [(root, bootstrap)]
    while stack:
        slot, samples = stack.pop()
        counts = np.bincount(y[samples], minlength=n_labels)
        if np.count_nonzero(counts) == 1:
            tree.dist[slot] = counts.astype(np.float64) / samples.size
            continue
        candidates = _sample_without_replacement(rng, feature_urn, n_candidates)
        split = _best_split(columns, y, samples, candidates, n_labels, n_samples)
        if split is None:
            tree.dist[slot] = counts.astype(np.float64) / samples.size
            continue
        feature, threshold, go_left = split
        left_slot = tree.add_node()
        right_slot = tree.add_node()
        tree.feature[slot] = feature
        tree.threshold[slot] = threshold
        tree.left[slot] = left_slot
        tree.right[slot] = right_slot
        tree.dist[slot] = None
        stack.append((right_slot, samples[~go_left]))
        stack.append((left_slot, samples[go_left]))
    return tree


def _sample_without_replacement(
    rng: np.random.RandomState, urn: np.ndarray, k: int
) -> np.ndarray:
    # Partial Fisher-Yates on a persistent urn; any permutation state is a
    # valid urn, so no restore pass is needed.
    size = urn.size
    for i in range(k):
        j = rng.randint(i, size)
        urn[i], urn[j] = urn[j], urn[i]
    return urn[:k].copy()


def _best_split(
    columns: dict[int, tuple[np.ndarray, np.ndarray]],
    y: np.ndarray,
    samples: np.ndarray,
    candidates: np.ndarray,
    n_labels: int,
    n_samples: int,
) -> tuple[int, float, np.ndarray] | None:
    """Best (feature, threshold, left mask) over the candidates, or None.

    Quality maximizes sum(left_counts^2)/n_left + sum(right_counts^2)/n_right,
    equivalent to minimizing the weighted child Gini impurity. Ties keep the
    earlier candidate; within a feature the smallest qualifying threshold.
    """
    m = samples.size
    node_y = y[samples]
    one_hot = np.zeros((m, n_labels), dtype=np.float64)
    best_quality = -np.inf
    best: tuple[int, float, np.ndarray] | None = None
    for feature in candidates:
        column = columns.get(int(feature))
        if column is None:
            continue
        dense = np.zeros(n_samples, dtype=np.float64)
        dense[column[0]] = column[1]
        values = dense[samples]
        order = np.argsort(values, kind="stable")
        sorted_values = values[order]
        if sorted_values[0] == sorted_values[-1]:
            continue
        boundaries = np.flatnonzero(sorted_values[:-1] < sorted_values[1:])
        one_hot[:] = 0.0
        one_hot[np.arange(m), node_y[order]] = 1.0
        cumulative = one_hot.cumsum(axis=0)
        left_counts = cumulative[boundaries]
        total = cumulative[-1]
        n_left = (boundaries + 1).astype(np.float64)
        n_right = m - n_left
        quality = (left_counts**2).sum(axis=1) / n_left + (
            (total - left_counts) ** 2
        ).sum(axis=1) / n_right
        pick = int(np.argmax(quality))
        if quality[pick] > best_quality:
            lo = float(sorted_values[boundaries[pick]])
            hi = float(sorted_values[boundaries[pick] + 1])
            threshold = (lo + hi) / 2.0
            if threshold >= hi:  # midpoint rounded up to the right value
                threshold = lo
            best_quality = float(quality[pick])
            best = (int(feature), threshold, values <= threshold)
    return best
