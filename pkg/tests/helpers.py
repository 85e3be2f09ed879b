from __future__ import annotations

from lahja import SparseVector


def as_sparse(dense) -> SparseVector:
    """Dense sequence -> SparseVector, dropping zeros."""
    return SparseVector.from_pairs(enumerate(dense))
