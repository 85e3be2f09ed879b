"""TF-IDF feature blocks per analyzer and their weighted union.

Each block learns a lexicographically ordered vocabulary with smoothed
inverse document frequencies idf(t) = ln((1 + N) / (1 + df(t))) + 1. A
document transforms to raw counts * idf, L2-normalized per block, then
scaled by the block's transformer weight. The union concatenates the three
blocks (word, char, char_wb) with fixed column offsets.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .analyzers import ANALYZER_KINDS, CHAR, CHAR_WB, WORD, build_analyzer
from .base import BaseEstimator, check_is_fitted, check_ngram_range
from .sparse import SparseVector, concat

BLOCK_ORDER = (WORD, CHAR, CHAR_WB)


@dataclass(frozen=True)
class BlockSpec:
    """Per-block configuration: n-gram range, vocabulary cap, transformer weight."""

    ngram_range: tuple[int, int] = (1, 1)
    max_features: int | None = None
    weight: float = 1.0

    def __post_init__(self) -> None:
        check_ngram_range(self.ngram_range)
        if self.max_features is not None and self.max_features < 1:
            raise ValueError(f"max_features must be >= 1 or None, got {self.max_features}")
        if not 0.0 < self.weight <= 1.0:
            raise ValueError(f"transformer weight must be in (0, 1], got {self.weight}")

    def to_dict(self) -> dict:
        return {
            "ngram_range": list(self.ngram_range),
            "max_features": self.max_features,
            "weight": self.weight,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "BlockSpec":
        if not isinstance(payload, dict):
            raise ValueError(f"block spec must be an object, got {type(payload).__name__}")
        unknown = set(payload) - {"ngram_range", "max_features", "weight"}
        if unknown:
            raise ValueError(f"unknown block spec fields: {sorted(unknown)}")
        lo, hi = payload.get("ngram_range", (1, 1))
        max_features = payload.get("max_features")
        return cls(
            ngram_range=(int(lo), int(hi)),
            max_features=None if max_features is None else int(max_features),
            weight=float(payload.get("weight", 1.0)),
        )


class TfidfBlock(BaseEstimator):
    """Single-analyzer TF-IDF vectorizer.

    Fitted attributes: ``vocabulary_`` (feature -> column, lexicographic),
    ``idf_`` (float array), ``n_features_``.
    """

    def __init__(
        self,
        analyzer: str = WORD,
        ngram_range: tuple[int, int] = (1, 1),
        max_features: int | None = None,
        weight: float = 1.0,
    ):
        self.analyzer = analyzer
        self.ngram_range = ngram_range
        self.max_features = max_features
        self.weight = weight

    def _check_params(self) -> Callable[[str], list[str]]:
        if self.analyzer not in ANALYZER_KINDS:
            raise ValueError(f"unknown analyzer {self.analyzer!r}; expected one of {ANALYZER_KINDS}")
        if self.max_features is not None and self.max_features < 1:
            raise ValueError(f"max_features must be >= 1 or None, got {self.max_features}")
        if not 0.0 < self.weight <= 1.0:
            raise ValueError(f"transformer weight must be in (0, 1], got {self.weight}")
        return build_analyzer(self.analyzer, tuple(self.ngram_range))

    def fit(self, texts: Sequence[str]) -> "TfidfBlock":
        analyze = self._check_params()
        texts = list(texts)
        if not texts:
            raise ValueError("cannot fit a TF-IDF block on an empty corpus")
        totals: Counter[str] = Counter()
        document_frequency: Counter[str] = Counter()
        for text in texts:
            features = analyze(text)
            totals.update(features)
            document_frequency.update(set(features))
        if self.max_features is not None and len(totals) > self.max_features:
            # Keep the features with the highest total corpus count; ties go
            # to the lexicographically smaller feature string.
            kept = sorted(totals.items(), key=lambda item: (-item[1], item[0]))[: self.max_features]
            names = sorted(name for name, _ in kept)
        else:
            names = sorted(totals)
        if not names:
            raise ValueError("no features survived fitting; corpus produced no analyzer output")
        n_docs = len(texts)
        self.vocabulary_ = {name: i for i, name in enumerate(names)}
        self.idf_ = np.array(
            [math.log((1.0 + n_docs) / (1.0 + document_frequency[name])) + 1.0 for name in names],
            dtype=np.float64,
        )
        self.n_features_ = len(names)
        self._analyze = analyze
        return self

    @classmethod
    def from_fitted(
        cls,
        analyzer: str,
        ngram_range: tuple[int, int],
        max_features: int | None,
        weight: float,
        feature_names: Sequence[str],
        idf: Sequence[float],
    ) -> "TfidfBlock":
        """Rebuild a fitted block from persisted state."""
        if list(feature_names) != sorted(feature_names):
            raise ValueError("persisted vocabulary must be in sorted order")
        if len(feature_names) != len(idf):
            raise ValueError("vocabulary and idf lengths differ")
        block = cls(analyzer, tuple(ngram_range), max_features, weight)
        block._analyze = block._check_params()
        block.vocabulary_ = {name: i for i, name in enumerate(feature_names)}
        block.idf_ = np.asarray(idf, dtype=np.float64)
        block.n_features_ = len(feature_names)
        return block

    def feature_names(self) -> list[str]:
        check_is_fitted(self, "vocabulary_")
        return sorted(self.vocabulary_, key=self.vocabulary_.get)

    def transform_one(self, text: str) -> SparseVector:
        check_is_fitted(self, "vocabulary_")
        counts: Counter[int] = Counter()
        vocabulary = self.vocabulary_
        for feature in self._analyze(text):
            column = vocabulary.get(feature)
            if column is not None:
                counts[column] += 1
        if not counts:
            return SparseVector.empty()
        indices = np.array(sorted(counts), dtype=np.int64)
        values = np.array([counts[i] for i in indices], dtype=np.float64) * self.idf_[indices]
        values /= np.sqrt(values @ values)
        values *= self.weight
        return SparseVector(indices, values)

    def transform(self, texts: Sequence[str]) -> list[SparseVector]:
        return [self.transform_one(text) for text in texts]


class TfidfUnion(BaseEstimator):
    """Weighted concatenation of the three analyzer blocks in fixed order.

    Any slot may be None (block disabled); enabled blocks keep the fixed
    word, char, char_wb column order with prefix-sum offsets.
    """

    def __init__(
        self,
        word: BlockSpec | None = BlockSpec((1, 1)),
        char: BlockSpec | None = BlockSpec((1, 5)),
        char_wb: BlockSpec | None = BlockSpec((1, 5)),
    ):
        self.word = word
        self.char = char
        self.char_wb = char_wb

    def _specs(self) -> tuple[BlockSpec | None, ...]:
        specs = (self.word, self.char, self.char_wb)
        if all(spec is None for spec in specs):
            raise ValueError("at least one block must be enabled")
        return specs

    def fit(self, texts: Sequence[str]) -> "TfidfUnion":
        specs = self._specs()
        texts = list(texts)
        blocks: list[TfidfBlock | None] = []
        for kind, spec in zip(BLOCK_ORDER, specs):
            if spec is None:
                blocks.append(None)
            else:
                blocks.append(
                    TfidfBlock(kind, spec.ngram_range, spec.max_features, spec.weight).fit(texts)
                )
        self._set_fitted(blocks)
        return self

    def _set_fitted(self, blocks: Sequence[TfidfBlock | None]) -> None:
        offsets: list[int] = []
        running = 0
        for block in blocks:
            offsets.append(running)
            if block is not None:
                running += block.n_features_
        self.blocks_ = tuple(blocks)
        self.offsets_ = tuple(offsets)
        self.n_features_ = running

    @classmethod
    def from_fitted_blocks(
        cls,
        blocks: Sequence[TfidfBlock | None],
    ) -> "TfidfUnion":
        specs = [
            None
            if block is None
            else BlockSpec(tuple(block.ngram_range), block.max_features, block.weight)
            for block in blocks
        ]
        union = cls(word=specs[0], char=specs[1], char_wb=specs[2])
        union._set_fitted(list(blocks))
        return union

    def transform_one(self, text: str) -> SparseVector:
        check_is_fitted(self, "blocks_")
        parts = [
            block.transform_one(text) if block is not None else SparseVector.empty()
            for block in self.blocks_
        ]
        return concat(parts, self.offsets_)

    def transform(self, texts: Sequence[str]) -> list[SparseVector]:
        return [self.transform_one(text) for text in texts]
