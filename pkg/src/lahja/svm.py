"""One-vs-rest linear SVM trained by dual coordinate descent.

Primal problem per label c (squared hinge, L2 regularization, bias folded in
as a constant-1 feature):

    min_w  0.5 ||w||^2 + C * sum_i a_i * max(0, 1 - s_i * (w . x_i + b))^2

with s_i = +1 when y_i == c else -1 and a_i the class weight of y_i (1 when
unweighted). The dual is solved coordinate-wise over a seeded random
permutation of the samples each epoch; training stops when the largest
projected-gradient violation over an epoch drops below ``tol`` or after
``max_epochs`` epochs.
"""

from __future__ import annotations

import random
from typing import Sequence

import numpy as np

from .base import BaseEstimator, check_is_fitted, check_positive
from .sparse import SparseVector

# Spreads per-label RNG streams apart so one-vs-rest problems stay
# independently reproducible.
_LABEL_SEED_STRIDE = 1_000_003


def compute_class_weights(y: Sequence[int], n_labels: int) -> np.ndarray:
    """Balanced class weights w(c) = N / (n_labels * count(c)).

    Every class in [0, n_labels) must occur at least once.
    """
    if n_labels < 1:
        raise ValueError(f"n_labels must be >= 1, got {n_labels}")
    labels = np.asarray(y, dtype=np.int64)
    if labels.size == 0:
        raise ValueError("cannot compute class weights for an empty label list")
    if labels.min() < 0 or labels.max() >= n_labels:
        raise ValueError("label index outside [0, n_labels)")
    counts = np.bincount(labels, minlength=n_labels)
    missing = np.flatnonzero(counts == 0)
    if missing.size:
        raise ValueError(
            f"class(es) {', '.join(str(c) for c in missing)} have no samples; "
            "balanced weights are undefined"
        )
    return labels.size / (n_labels * counts.astype(np.float64))


class LinearSvc(BaseEstimator):
    """One-vs-rest linear SVM over sparse vectors.

    Fitted attributes: ``coef_`` (n_labels x n_features), ``intercept_``
    (n_labels), ``n_features_``, ``n_labels_`` and
    ``dual_objective_history_`` — one per-epoch list of dual objective
    values per label, each non-decreasing.
    """

    def __init__(
        self,
        C: float = 1.0,
        balanced: bool = False,
        tol: float = 1e-4,
        max_epochs: int = 1000,
        seed: int = 0,
    ):
        self.C = C
        self.balanced = balanced
        self.tol = tol
        self.max_epochs = max_epochs
        self.seed = seed

    def fit(
        self,
        X: Sequence[SparseVector],
        y: Sequence[int],
        n_labels: int | None = None,
        n_features: int | None = None,
    ) -> "LinearSvc":
        check_positive("C", self.C)
        check_positive("tol", self.tol)
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be >= 1, got {self.max_epochs}")
        X = list(X)
        labels = np.asarray(y, dtype=np.int64)
        if len(X) != labels.size:
            raise ValueError(f"X and y lengths differ: {len(X)} vs {labels.size}")
        if len(X) < 2:
            raise ValueError("training requires at least 2 samples")
        if labels.size and labels.min() < 0:
            raise ValueError("label indices must be >= 0")
        if np.unique(labels).size < 2:
            raise ValueError("training requires at least 2 distinct labels")
        if n_labels is None:
            n_labels = int(labels.max()) + 1
        elif labels.max() >= n_labels:
            raise ValueError("label index outside [0, n_labels)")

        index_arrays = [vec.indices for vec in X]
        value_arrays = [vec.values for vec in X]
        for i, values in enumerate(value_arrays):
            if values.size and not np.all(np.isfinite(values)):
                raise ValueError(f"sample {i} contains non-finite feature values")
        max_index = max((int(idx[-1]) for idx in index_arrays if idx.size), default=-1)
        if n_features is None:
            n_features = max_index + 1
        elif max_index >= n_features:
            raise ValueError("feature index outside [0, n_features)")

        weights = compute_class_weights(labels, n_labels) if self.balanced else None
        per_sample_c = np.full(labels.size, float(self.C))
        if weights is not None:
            per_sample_c *= weights[labels]
        diag = 1.0 / (2.0 * per_sample_c)
        # +1.0 accounts for the implicit constant-1 bias feature.
        q_diag = np.array([float(v @ v) + 1.0 for v in value_arrays]) + diag

        coef = np.zeros((n_labels, n_features), dtype=np.float64)
        intercept = np.zeros(n_labels, dtype=np.float64)
        history: list[list[float]] = []
        for label in range(n_labels):
            signs = np.where(labels == label, 1.0, -1.0)
            w, b, objective = _solve_binary(
                index_arrays,
                value_arrays,
                signs,
                diag,
                q_diag,
                n_features,
                self.tol,
                self.max_epochs,
                self.seed * _LABEL_SEED_STRIDE + label,
            )
            coef[label] = w
            intercept[label] = b
            history.append(objective)

        self.coef_ = coef
        self.intercept_ = intercept
        self.n_features_ = n_features
        self.n_labels_ = n_labels
        self.dual_objective_history_ = history
        return self

    @classmethod
    def from_fitted(
        cls,
        params: dict,
        coef: np.ndarray,
        intercept: np.ndarray,
    ) -> "LinearSvc":
        model = cls(**params)
        model.coef_ = np.asarray(coef, dtype=np.float64)
        model.intercept_ = np.asarray(intercept, dtype=np.float64)
        model.n_labels_, model.n_features_ = model.coef_.shape
        model.dual_objective_history_ = []
        return model

    def decision_function(self, x: SparseVector) -> np.ndarray:
        """Per-label margins w_c . x + b_c."""
        check_is_fitted(self, "coef_")
        if x.nnz and int(x.indices[-1]) >= self.n_features_:
            raise ValueError(
                f"vector index {int(x.indices[-1])} outside model dimension {self.n_features_}"
            )
        if not x.nnz:
            return self.intercept_.copy()
        return self.coef_[:, x.indices] @ x.values + self.intercept_

    def predict(self, x: SparseVector) -> int:
        return int(np.argmax(self.decision_function(x)))


def _solve_binary(
    index_arrays: list[np.ndarray],
    value_arrays: list[np.ndarray],
    signs: np.ndarray,
    diag: np.ndarray,
    q_diag: np.ndarray,
    n_features: int,
    tol: float,
    max_epochs: int,
    seed: int,
) -> tuple[np.ndarray, float, list[float]]:
    """Dual coordinate descent for one binary subproblem; returns (w, b, objective history)."""
    n = signs.size
    w = np.zeros(n_features, dtype=np.float64)
    b = 0.0
    alpha = np.zeros(n, dtype=np.float64)
    order = list(range(n))
    rng = random.Random(seed)
    objective: list[float] = []
    for _ in range(max_epochs):
        rng.shuffle(order)
        max_violation = 0.0
        for i in order:
            idx = index_arrays[i]
            val = value_arrays[i]
            sign = signs[i]
            a_old = alpha[i]
            margin = (float(w[idx] @ val) + b) if idx.size else b
            gradient = sign * margin - 1.0 + a_old * diag[i]
            projected = min(gradient, 0.0) if a_old == 0.0 else gradient
            violation = abs(projected)
            if violation > max_violation:
                max_violation = violation
            if violation > 1e-12:
                a_new = a_old - gradient / q_diag[i]
                if a_new < 0.0:
                    a_new = 0.0
                delta = a_new - a_old
                if delta != 0.0:
                    alpha[i] = a_new
                    step = delta * sign
                    if idx.size:
                        w[idx] += step * val
                    b += step
        objective.append(
            float(alpha.sum() - 0.5 * (w @ w + b * b + float(alpha @ (alpha * diag))))
        )
        if max_violation < tol:
            break
    return w, b, objective
