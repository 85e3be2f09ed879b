from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lahja import BlockSpec, NotFittedError, TfidfBlock, TfidfUnion

TWO_DOC_CORPUS = ["a b a", "b c"]


class TestFitBlock:
    def test_vocabulary_sorted_and_idf(self):
        block = TfidfBlock("word", (1, 1)).fit(TWO_DOC_CORPUS)
        assert block.vocabulary_ == {"a": 0, "b": 1, "c": 2}
        expected = [math.log(3 / 2) + 1, 1.0, math.log(3 / 2) + 1]
        np.testing.assert_allclose(block.idf_, expected, atol=1e-12)

    def test_max_features_tie_breaks_lexicographically(self):
        # a and b both total 2 occurrences; a wins the single slot.
        block = TfidfBlock("word", (1, 1), max_features=1).fit(TWO_DOC_CORPUS)
        assert block.vocabulary_ == {"a": 0}

    def test_max_features_prefers_higher_counts(self):
        block = TfidfBlock("word", (1, 1), max_features=2).fit(["z z z y", "y x"])
        assert set(block.vocabulary_) == {"y", "z"}
        assert block.vocabulary_ == {"y": 0, "z": 1}

    def test_single_doc_idf_is_one(self):
        block = TfidfBlock("word", (1, 1)).fit(["t t"])
        assert block.idf_[block.vocabulary_["t"]] == pytest.approx(1.0)

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            TfidfBlock("word", (1, 1)).fit([])

    def test_no_surviving_features_rejected(self):
        with pytest.raises(ValueError):
            TfidfBlock("word", (1, 1)).fit(["...", "!!"])

    def test_invalid_weight_rejected(self):
        with pytest.raises(ValueError):
            TfidfBlock("word", (1, 1), weight=0.0).fit(TWO_DOC_CORPUS)
        with pytest.raises(ValueError):
            TfidfBlock("word", (1, 1), weight=1.5).fit(TWO_DOC_CORPUS)

    def test_fit_is_corpus_order_invariant(self):
        a = TfidfBlock("word", (1, 2), max_features=4).fit(["a b a", "b c", "c d e"])
        b = TfidfBlock("word", (1, 2), max_features=4).fit(["c d e", "a b a", "b c"])
        assert a.vocabulary_ == b.vocabulary_
        np.testing.assert_array_equal(a.idf_, b.idf_)

    @given(
        st.lists(
            st.text(alphabet="abcd ", min_size=1, max_size=10).filter(lambda t: t.strip()),
            min_size=1,
            max_size=8,
        )
    )
    def test_idf_lower_bound(self, texts):
        try:
            block = TfidfBlock("char", (1, 2)).fit(texts)
        except ValueError:
            return  # corpus produced no features
        assert (block.idf_ >= 1.0).all()


class TestTransformBlock:
    def test_hand_computed_values(self):
        block = TfidfBlock("word", (1, 1)).fit(TWO_DOC_CORPUS)
        vec = block.transform_one("a b a")
        assert vec.pairs()[0][0] == 0 and vec.pairs()[1][0] == 1
        np.testing.assert_allclose(vec.values, [0.942156, 0.335176], atol=1e-6)

    def test_oov_only_input_is_empty(self):
        block = TfidfBlock("word", (1, 1)).fit(TWO_DOC_CORPUS)
        assert block.transform_one("zzz qqq").nnz == 0

    def test_weight_scales_every_value(self):
        full = TfidfBlock("word", (1, 1), weight=1.0).fit(TWO_DOC_CORPUS)
        half = TfidfBlock("word", (1, 1), weight=0.5).fit(TWO_DOC_CORPUS)
        v1 = full.transform_one("a b a")
        v2 = half.transform_one("a b a")
        np.testing.assert_array_equal(v2.values, v1.values * 0.5)

    def test_unit_norm_at_weight_one(self):
        block = TfidfBlock("char", (1, 3)).fit(TWO_DOC_CORPUS)
        for text in TWO_DOC_CORPUS + ["b a c"]:
            vec = block.transform_one(text)
            if vec.nnz:
                assert abs(vec.norm() - 1.0) < 1e-9

    def test_transform_before_fit_raises(self):
        with pytest.raises(NotFittedError):
            TfidfBlock().transform_one("a")


class TestUnion:
    def test_offsets_are_prefix_sums(self):
        union = TfidfUnion(
            word=BlockSpec((1, 1)), char=BlockSpec((1, 2)), char_wb=BlockSpec((1, 2))
        ).fit(TWO_DOC_CORPUS)
        sizes = [b.n_features_ for b in union.blocks_]
        assert union.offsets_ == (0, sizes[0], sizes[0] + sizes[1])
        assert union.n_features_ == sum(sizes)

    def test_disabled_blocks_contribute_zero_width(self):
        union = TfidfUnion(word=BlockSpec((1, 1)), char=None, char_wb=None).fit(TWO_DOC_CORPUS)
        assert union.blocks_[1] is None and union.blocks_[2] is None
        assert union.n_features_ == union.blocks_[0].n_features_

    def test_all_disabled_rejected(self):
        with pytest.raises(ValueError):
            TfidfUnion(word=None, char=None, char_wb=None).fit(TWO_DOC_CORPUS)

    def test_empty_text_transforms_to_empty_vector(self):
        union = TfidfUnion(
            word=BlockSpec((1, 1)), char=BlockSpec((1, 2)), char_wb=BlockSpec((1, 2))
        ).fit(TWO_DOC_CORPUS)
        assert union.transform_one("@@@").nnz == 0

    def test_slices_match_independent_block_transforms(self):
        union = TfidfUnion(
            word=BlockSpec((1, 1)), char=BlockSpec((1, 2)), char_wb=BlockSpec((1, 2))
        ).fit(TWO_DOC_CORPUS)
        for text in TWO_DOC_CORPUS + ["c a b a"]:
            combined = union.transform_one(text)
            rebuilt = []
            for block, offset in zip(union.blocks_, union.offsets_):
                for idx, value in block.transform_one(text):
                    rebuilt.append((idx + offset, value))
            assert combined.pairs() == rebuilt

    def test_per_block_weight_scaling_leaves_other_slices_bit_identical(self):
        base = TfidfUnion(
            word=BlockSpec((1, 1), weight=1.0),
            char=BlockSpec((1, 2), weight=1.0),
            char_wb=BlockSpec((1, 2), weight=1.0),
        ).fit(TWO_DOC_CORPUS)
        scaled = TfidfUnion(
            word=BlockSpec((1, 1), weight=1.0),
            char=BlockSpec((1, 2), weight=0.25),
            char_wb=BlockSpec((1, 2), weight=1.0),
        ).fit(TWO_DOC_CORPUS)
        text = "a b c"
        v_base = dict(base.transform_one(text).pairs())
        v_scaled = dict(scaled.transform_one(text).pairs())
        assert set(v_base) == set(v_scaled)
        lo, hi = base.offsets_[1], base.offsets_[2]
        for idx, value in v_base.items():
            if lo <= idx < hi:
                assert v_scaled[idx] == value * 0.25
            else:
                assert v_scaled[idx] == value  # other slices untouched

    def test_dimension_bound_with_caps(self):
        union = TfidfUnion(
            word=BlockSpec((1, 3), max_features=10),
            char=BlockSpec((1, 5), max_features=10),
            char_wb=BlockSpec((1, 5), max_features=10),
        ).fit(["abc def ghi jkl", "mno pqr stu", "vwx yz abc"])
        assert union.n_features_ <= 30

    def test_get_params_round_trip(self):
        spec = BlockSpec((1, 3), 100, 0.5)
        union = TfidfUnion(word=spec, char=None, char_wb=None)
        params = union.get_params()
        clone = TfidfUnion(**params)
        assert clone.get_params() == params
