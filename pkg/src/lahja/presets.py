"""Bundled pipeline configurations for the packaged experiment runs.

``baseline`` is the word-unigram TF-IDF + linear SVC reference point. The
``exp1``/``exp2-*`` presets are single-SVC runs over three-block unions with
increasingly tuned n-gram ranges and transformer weights (``exp2-1`` is the
equal-weights run, identical to ``exp1``). ``exp3-hard`` and
``exp3-weighted`` vote the SVC, random forest and KNN predictions, reusing
the best exp2 vectorizer settings with a 1000-feature cap per block.
"""

from __future__ import annotations

from .ensemble import DecisionPolicy
from .pipeline import ForestParams, PipelineConfig, SvcParams
from .vectorizer import BlockSpec


def _svc_preset(
    ranges: tuple[int, int, int],
    weights: tuple[float, float, float],
    C: float,
    balanced: bool,
) -> PipelineConfig:
    word_n, char_n, char_wb_n = ranges
    w1, w2, w3 = weights
    return PipelineConfig(
        word=BlockSpec((1, word_n), None, w1),
        char=BlockSpec((1, char_n), None, w2),
        char_wb=BlockSpec((1, char_wb_n), None, w3),
        classifier="svc",
        svc=SvcParams(C=C, balanced=balanced),
    )


def _vote_preset(vote_weights: tuple[float, float, float]) -> PipelineConfig:
    # Vectorizer and SVC settings follow exp2-2; the per-block feature cap
    # keeps the ensemble's feature space bounded.
    return PipelineConfig(
        word=BlockSpec((1, 5), 1000, 0.65),
        char=BlockSpec((1, 5), 1000, 0.85),
        char_wb=BlockSpec((1, 5), 1000, 0.85),
        classifier="vote",
        svc=SvcParams(C=4.0, balanced=True),
        forest=ForestParams(n_trees=100),
        k=3,
        vote_weights=vote_weights,
        policy=DecisionPolicy("argmax"),
    )


def _build_presets() -> dict[str, PipelineConfig]:
    return {
        "baseline": PipelineConfig(
            word=BlockSpec((1, 1), None, 1.0),
            char=None,
            char_wb=None,
            classifier="svc",
            svc=SvcParams(C=1.0, balanced=False),
        ),
        "exp1": _svc_preset((3, 5, 5), (1.0, 1.0, 1.0), C=5.0, balanced=True),
        "exp2-1": _svc_preset((3, 5, 5), (1.0, 1.0, 1.0), C=5.0, balanced=True),
        "exp2-2": _svc_preset((5, 5, 5), (0.65, 0.85, 0.85), C=4.0, balanced=True),
        "exp2-3": _svc_preset((3, 4, 5), (0.45, 0.5, 0.75), C=4.0, balanced=False),
        "exp2-4": _svc_preset((4, 4, 4), (0.45, 0.5, 0.75), C=4.0, balanced=False),
        "exp2-5": _svc_preset((4, 4, 4), (0.35, 0.45, 0.75), C=4.0, balanced=False),
        "exp3-hard": _vote_preset((1.0, 1.0, 1.0)),
        "exp3-weighted": _vote_preset((0.4, 0.3, 0.3)),
    }


_PRESETS = _build_presets()
PRESET_NAMES = tuple(_PRESETS)


def preset(name: str) -> PipelineConfig:
    """Return the named preset configuration."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}"
        ) from None
