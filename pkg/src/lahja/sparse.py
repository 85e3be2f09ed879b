"""Sparse feature vectors: sorted (index, value) pairs with no stored zeros."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np


class SparseVector:
    """Immutable sparse vector over a zero-default feature space.

    Indices are strictly increasing and every stored value is nonzero.
    """

    __slots__ = ("indices", "values")

    def __init__(self, indices: Sequence[int] = (), values: Sequence[float] = ()):
        idx = np.asarray(indices, dtype=np.int64)
        val = np.asarray(values, dtype=np.float64)
        if idx.ndim != 1 or val.ndim != 1 or idx.shape != val.shape:
            raise ValueError("indices and values must be 1-d sequences of equal length")
        if idx.size:
            if idx[0] < 0:
                raise ValueError("indices must be non-negative")
            if np.any(np.diff(idx) <= 0):
                raise ValueError("indices must be strictly increasing")
            if np.any(val == 0.0):
                raise ValueError("explicit zeros are not allowed")
        idx.setflags(write=False)
        val.setflags(write=False)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SparseVector is immutable")

    @classmethod
    def empty(cls) -> "SparseVector":
        return cls((), ())

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]]) -> "SparseVector":
        items = sorted((int(i), float(v)) for i, v in pairs)
        return cls([i for i, v in items if v != 0.0], [v for _, v in items if v != 0.0])

    @classmethod
    def from_counts(cls, counts: Mapping[int, float]) -> "SparseVector":
        return cls.from_pairs(counts.items())

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def __bool__(self) -> bool:
        return self.nnz > 0

    def __iter__(self) -> Iterator[tuple[int, float]]:
        for i, v in zip(self.indices, self.values):
            yield int(i), float(v)

    def pairs(self) -> list[tuple[int, float]]:
        return list(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return bool(
            self.indices.shape == other.indices.shape
            and np.all(self.indices == other.indices)
            and np.all(self.values == other.values)
        )

    def __hash__(self) -> int:
        return hash((self.indices.tobytes(), self.values.tobytes()))

    def __repr__(self) -> str:
        return f"SparseVector({self.pairs()!r})"

    def norm(self) -> float:
        if not self.nnz:
            return 0.0
        return float(np.sqrt(self.values @ self.values))

    def dot(self, other: "SparseVector") -> float:
        if not self.nnz or not other.nnz:
            return 0.0
        _, ia, ib = np.intersect1d(
            self.indices, other.indices, assume_unique=True, return_indices=True
        )
        if not ia.size:
            return 0.0
        return float(self.values[ia] @ other.values[ib])

    def dot_dense(self, weights: np.ndarray) -> float:
        """Dot product against a dense weight vector indexed by feature id."""
        if not self.nnz:
            return 0.0
        return float(weights[self.indices] @ self.values)

    def value_at(self, index: int) -> float:
        """Stored value at ``index``; absent features read as 0.0."""
        pos = int(np.searchsorted(self.indices, index))
        if pos < self.nnz and self.indices[pos] == index:
            return float(self.values[pos])
        return 0.0

    def scaled(self, factor: float) -> "SparseVector":
        if factor == 0.0:
            return SparseVector.empty()
        return SparseVector(self.indices, self.values * factor)

    def shifted(self, offset: int) -> "SparseVector":
        if offset < 0:
            raise ValueError("offset must be >= 0")
        if not self.nnz:
            return self
        return SparseVector(self.indices + offset, self.values)

    def to_dense(self, size: int) -> np.ndarray:
        out = np.zeros(size, dtype=np.float64)
        if self.nnz:
            out[self.indices] = self.values
        return out


def concat(parts: Sequence[SparseVector], offsets: Sequence[int]) -> SparseVector:
    """Concatenate block vectors whose index ranges start at the given offsets."""
    if len(parts) != len(offsets):
        raise ValueError("parts and offsets must have equal length")
    shifted = [p.shifted(off) for p, off in zip(parts, offsets) if p.nnz]
    if not shifted:
        return SparseVector.empty()
    indices = np.concatenate([p.indices for p in shifted])
    values = np.concatenate([p.values for p in shifted])
    return SparseVector(indices, values)
