"""End-to-end pipeline: weighted TF-IDF union into a classifier or their vote.

A pipeline fits the feature union on every training text, then trains the
configured classifier(s) on one sample per (document, gold label) pair;
documents with empty label sets contribute to the union statistics only.
Prediction maps each text to a label set through the decision policy (SVC
margins support threshold/top-k policies; forest, knn and the voting path
are argmax-only).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .base import BaseEstimator, check_is_fitted
from .corpus import Dataset
from .ensemble import DecisionPolicy, decide_labels, weighted_hard_vote
from .forest import RandomForest
from .knn import KnnClassifier
from .metrics import MetricsReport, evaluate
from .sparse import SparseVector
from .svm import LinearSvc
from .vectorizer import BlockSpec, TfidfUnion

CLASSIFIER_CHOICES = ("svc", "forest", "knn", "vote")


@dataclass(frozen=True)
class SvcParams:
    C: float = 1.0
    balanced: bool = False
    tol: float = 1e-4
    max_epochs: int = 1000

    def __post_init__(self) -> None:
        if not self.C > 0:
            raise ValueError(f"C must be > 0, got {self.C}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be >= 1, got {self.max_epochs}")

    def to_dict(self) -> dict:
        return {"C": self.C, "balanced": self.balanced, "tol": self.tol, "max_epochs": self.max_epochs}

    @classmethod
    def from_dict(cls, payload: dict) -> "SvcParams":
        unknown = set(payload) - {"C", "balanced", "tol", "max_epochs"}
        if unknown:
            raise ValueError(f"unknown svc fields: {sorted(unknown)}")
        return cls(
            C=float(payload.get("C", 1.0)),
            balanced=bool(payload.get("balanced", False)),
            tol=float(payload.get("tol", 1e-4)),
            max_epochs=int(payload.get("max_epochs", 1000)),
        )


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100

    def __post_init__(self) -> None:
        if self.n_trees < 1:
            raise ValueError(f"n_trees must be >= 1, got {self.n_trees}")

    def to_dict(self) -> dict:
        return {"n_trees": self.n_trees}

    @classmethod
    def from_dict(cls, payload: dict) -> "ForestParams":
        unknown = set(payload) - {"n_trees"}
        if unknown:
            raise ValueError(f"unknown forest fields: {sorted(unknown)}")
        return cls(n_trees=int(payload.get("n_trees", 100)))


@dataclass(frozen=True)
class PipelineConfig:
    """Complete run configuration; JSON config files mirror these field names."""

    word: BlockSpec | None = field(default_factory=lambda: BlockSpec((1, 1)))
    char: BlockSpec | None = None
    char_wb: BlockSpec | None = None
    classifier: str = "svc"
    svc: SvcParams = field(default_factory=SvcParams)
    forest: ForestParams = field(default_factory=ForestParams)
    k: int = 3
    vote_weights: tuple[float, float, float] = (1.0, 1.0, 1.0)
    policy: DecisionPolicy = field(default_factory=DecisionPolicy)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.classifier not in CLASSIFIER_CHOICES:
            raise ValueError(
                f"unknown classifier {self.classifier!r}; expected one of {CLASSIFIER_CHOICES}"
            )
        if all(block is None for block in (self.word, self.char, self.char_wb)):
            raise ValueError("at least one feature block must be enabled")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if len(self.vote_weights) != 3 or any(not w > 0 for w in self.vote_weights):
            raise ValueError("vote_weights must be three positive reals")
        if self.classifier != "svc" and self.policy.kind != "argmax":
            raise ValueError(
                f"policy {self.policy.kind!r} needs per-label scores; "
                f"classifier {self.classifier!r} supports only argmax"
            )

    def to_dict(self) -> dict:
        return {
            "word": None if self.word is None else self.word.to_dict(),
            "char": None if self.char is None else self.char.to_dict(),
            "char_wb": None if self.char_wb is None else self.char_wb.to_dict(),
            "classifier": self.classifier,
            "svc": self.svc.to_dict(),
            "forest": self.forest.to_dict(),
            "k": self.k,
            "vote_weights": list(self.vote_weights),
            "policy": self.policy.to_dict(),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "PipelineConfig":
        if not isinstance(payload, dict):
            raise ValueError(f"config must be an object, got {type(payload).__name__}")
        known = {
            "word", "char", "char_wb", "classifier", "svc", "forest", "k",
            "vote_weights", "policy", "seed",
        }
        unknown = set(payload) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")

        def block(name: str, default: BlockSpec | None) -> BlockSpec | None:
            if name not in payload:
                return default
            value = payload[name]
            return None if value is None else BlockSpec.from_dict(value)

        vote_weights = payload.get("vote_weights", (1.0, 1.0, 1.0))
        return cls(
            word=block("word", BlockSpec((1, 1))),
            char=block("char", None),
            char_wb=block("char_wb", None),
            classifier=payload.get("classifier", "svc"),
            svc=SvcParams.from_dict(payload.get("svc", {})),
            forest=ForestParams.from_dict(payload.get("forest", {})),
            k=int(payload.get("k", 3)),
            vote_weights=tuple(float(w) for w in vote_weights),
            policy=DecisionPolicy.from_dict(payload.get("policy", {"kind": "argmax"})),
            seed=int(payload.get("seed", 0)),
        )

    def canonical_json(self) -> str:
        """Deterministic serialization used for tie-ordering sweep results."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


class DialectPipeline(BaseEstimator):
    """Fitted union + classifier(s) + decision policy over a Dataset."""

    def __init__(self, config: PipelineConfig = PipelineConfig()):
        self.config = config

    def fit(self, dataset: Dataset) -> "DialectPipeline":
        cfg = self.config
        if not len(dataset):
            raise ValueError("cannot fit on an empty dataset")
        union = TfidfUnion(word=cfg.word, char=cfg.char, char_wb=cfg.char_wb).fit(dataset.texts())
        vectors = union.transform(dataset.texts())

        X: list[SparseVector] = []
        y: list[int] = []
        for doc in dataset.documents:
            for label in sorted(doc.labels):
                X.append(vectors[doc.id])
                y.append(label)
        if not X:
            raise ValueError("no labeled documents available for classifier training")

        n_labels = len(dataset.label_space)
        svc = forest = knn = None
        if cfg.classifier in ("svc", "vote"):
            svc = LinearSvc(
                C=cfg.svc.C,
                balanced=cfg.svc.balanced,
                tol=cfg.svc.tol,
                max_epochs=cfg.svc.max_epochs,
                seed=cfg.seed,
            ).fit(X, y, n_labels=n_labels, n_features=union.n_features_)
        if cfg.classifier in ("forest", "vote"):
            forest = RandomForest(n_trees=cfg.forest.n_trees, seed=cfg.seed).fit(
                X, y, n_labels=n_labels, n_features=union.n_features_
            )
        if cfg.classifier in ("knn", "vote"):
            knn = KnnClassifier(k=cfg.k).fit(X, y, n_labels=n_labels)

        self.union_ = union
        self.svc_ = svc
        self.forest_ = forest
        self.knn_ = knn
        self.label_space_ = dataset.label_space
        self.n_labels_ = n_labels
        return self

    def transform_text(self, text: str) -> SparseVector:
        check_is_fitted(self, "union_")
        return self.union_.transform_one(text)

    def predict_text(self, text: str) -> frozenset[int]:
        check_is_fitted(self, "union_")
        x = self.transform_text(text)
        cfg = self.config
        if cfg.classifier == "svc":
            return decide_labels(self.svc_.decision_function(x), cfg.policy)
        if cfg.classifier == "forest":
            return frozenset((self.forest_.predict(x),))
        if cfg.classifier == "knn":
            return frozenset((self.knn_.predict(x),))
        votes = (self.svc_.predict(x), self.forest_.predict(x), self.knn_.predict(x))
        return frozenset((weighted_hard_vote(votes, cfg.vote_weights),))

    def predict(self, texts: Sequence[str]) -> list[frozenset[int]]:
        return [self.predict_text(text) for text in texts]

    def predict_dataset(self, dataset: Dataset) -> list[frozenset[int]]:
        self._check_label_space(dataset)
        return self.predict(dataset.texts())

    def predict_names(self, text: str) -> list[str]:
        """Predicted label names in canonical (sorted) order."""
        return [self.label_space_.names[i] for i in sorted(self.predict_text(text))]

    def _check_label_space(self, dataset: Dataset) -> None:
        check_is_fitted(self, "union_")
        if dataset.label_space.names and dataset.label_space.names != self.label_space_.names:
            raise ValueError(
                "dataset label space does not match the fitted label space; "
                "align the datasets first (see corpus.merge_label_spaces)"
            )


def run_pipeline(train: Dataset, eval_dataset: Dataset, config: PipelineConfig) -> MetricsReport:
    """Fit on ``train``, predict ``eval_dataset`` and score the predictions."""
    if train.label_space.names != eval_dataset.label_space.names:
        raise ValueError(
            "train and eval label spaces differ; align them first (see corpus.merge_label_spaces)"
        )
    pipeline = DialectPipeline(config).fit(train)
    preds = pipeline.predict_dataset(eval_dataset)
    golds = eval_dataset.label_sets()
    return evaluate(preds, golds, n_labels=len(train.label_space))


def run_component_comparison(
    train: Dataset, eval_dataset: Dataset, config: PipelineConfig
) -> dict[str, MetricsReport]:
    """Fit a voting pipeline once and score each base classifier beside the vote.

    Returns reports keyed "svc", "forest", "knn", "vote".
    """
    if config.classifier != "vote":
        raise ValueError("component comparison requires a voting configuration")
    if train.label_space.names != eval_dataset.label_space.names:
        raise ValueError("train and eval label spaces differ; align them first")
    pipeline = DialectPipeline(config).fit(train)
    golds = eval_dataset.label_sets()
    n_labels = len(train.label_space)
    vectors = [pipeline.transform_text(text) for text in eval_dataset.texts()]

    components = {
        "svc": lambda x: pipeline.svc_.predict(x),
        "forest": lambda x: pipeline.forest_.predict(x),
        "knn": lambda x: pipeline.knn_.predict(x),
    }
    reports: dict[str, MetricsReport] = {}
    for name, predict in components.items():
        preds = [frozenset((predict(x),)) for x in vectors]
        reports[name] = evaluate(preds, golds, n_labels=n_labels)
    voted = [
        frozenset(
            (
                weighted_hard_vote(
                    (pipeline.svc_.predict(x), pipeline.forest_.predict(x), pipeline.knn_.predict(x)),
                    config.vote_weights,
                ),
            )
        )
        for x in vectors
    ]
    reports["vote"] = evaluate(voted, golds, n_labels=n_labels)
    return reports
