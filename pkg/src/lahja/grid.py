"""Hyperparameter grids: deterministic enumeration and sweep execution.

A :class:`GridSpec` holds one candidate list per tunable field; the sweep
runs the full Cartesian product with the declared field order (``n`` varies
slowest, ``v3`` fastest). Classifier choice and other non-swept settings are
fixed scalar fields. Sweep workers can run in separate processes — the
``LAHJA_THREADS`` environment variable caps the worker count (default 1) —
and results are merged in config order, so output is independent of
scheduling.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Sequence

from .corpus import Dataset
from .ensemble import DecisionPolicy
from .metrics import MetricsReport
from .pipeline import CLASSIFIER_CHOICES, ForestParams, PipelineConfig, SvcParams, run_pipeline
from .vectorizer import BlockSpec

DEFAULT_MAX_CONFIGS = 10_000

# Documented candidate domains for the tunable fields.
N_DOMAIN = (1, 2, 3, 4, 5)
C_DOMAIN = (1.0, 2.0, 3.0, 4.0, 5.0)
TRANSFORMER_WEIGHT_DOMAIN = tuple(round(0.1 * i, 1) for i in range(1, 11))
VOTE_WEIGHT_DOMAIN = tuple(round(0.1 * i, 1) for i in range(1, 7))
MAX_FEATURES_DOMAIN = (300, 1000)  # inclusive bounds, any value in between

_PRODUCT_FIELDS = ("n", "w1", "w2", "w3", "max_features", "C", "v1", "v2", "v3")
_FIXED_FIELDS = ("classifier", "balanced", "k", "n_trees", "policy", "seed")


class GridSizeError(ValueError):
    """Grid product exceeds the configured safety cap."""

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(
            f"grid enumerates {count} configurations, exceeding the safety cap of {cap}; "
            "raise the cap explicitly to proceed"
        )


@dataclass(frozen=True)
class GridSpec:
    """Candidate value lists per tunable field plus fixed run settings.

    ``n`` is a shared upper n-gram bound applied as range (1, n) to all
    three blocks; ``w1``/``w2``/``w3`` are the word/char/char_wb transformer
    weights, ``max_features`` the shared per-block cap, ``v1``/``v2``/``v3``
    the vote weights.
    """

    n: tuple[int, ...] = N_DOMAIN
    w1: tuple[float, ...] = (1.0,)
    w2: tuple[float, ...] = (1.0,)
    w3: tuple[float, ...] = (1.0,)
    max_features: tuple[int | None, ...] = (None,)
    C: tuple[float, ...] = C_DOMAIN
    v1: tuple[float, ...] = (1.0,)
    v2: tuple[float, ...] = (1.0,)
    v3: tuple[float, ...] = (1.0,)
    classifier: str = "svc"
    balanced: bool = True
    k: int = 3
    n_trees: int = 100
    policy: DecisionPolicy = field(default_factory=DecisionPolicy)
    seed: int = 0

    def __post_init__(self) -> None:
        for name in _PRODUCT_FIELDS:
            values = getattr(self, name)
            if isinstance(values, list):
                values = tuple(values)
                object.__setattr__(self, name, values)
            if not isinstance(values, tuple) or not values:
                raise ValueError(f"grid field {name!r} must be a non-empty sequence of candidates")
        if self.classifier not in CLASSIFIER_CHOICES:
            raise ValueError(
                f"unknown classifier {self.classifier!r}; expected one of {CLASSIFIER_CHOICES}"
            )

    def size(self) -> int:
        count = 1
        for name in _PRODUCT_FIELDS:
            count *= len(getattr(self, name))
        return count

    def to_dict(self) -> dict:
        return {
            "n": list(self.n),
            "w1": list(self.w1),
            "w2": list(self.w2),
            "w3": list(self.w3),
            "max_features": list(self.max_features),
            "C": list(self.C),
            "v1": list(self.v1),
            "v2": list(self.v2),
            "v3": list(self.v3),
            "classifier": self.classifier,
            "balanced": self.balanced,
            "k": self.k,
            "n_trees": self.n_trees,
            "policy": self.policy.to_dict(),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "GridSpec":
        if not isinstance(payload, dict):
            raise ValueError(f"grid spec must be an object, got {type(payload).__name__}")
        unknown = set(payload) - set(_PRODUCT_FIELDS) - set(_FIXED_FIELDS)
        if unknown:
            raise ValueError(f"unknown grid fields: {sorted(unknown)}")
        kwargs: dict = {}
        for name in _PRODUCT_FIELDS:
            if name in payload:
                values = payload[name]
                if not isinstance(values, list):
                    raise ValueError(f"grid field {name!r} must be a list of candidate values")
                if name == "n":
                    kwargs[name] = tuple(int(v) for v in values)
                elif name == "max_features":
                    kwargs[name] = tuple(None if v is None else int(v) for v in values)
                else:
                    kwargs[name] = tuple(float(v) for v in values)
        if "classifier" in payload:
            kwargs["classifier"] = payload["classifier"]
        if "balanced" in payload:
            kwargs["balanced"] = bool(payload["balanced"])
        if "k" in payload:
            kwargs["k"] = int(payload["k"])
        if "n_trees" in payload:
            kwargs["n_trees"] = int(payload["n_trees"])
        if "policy" in payload:
            kwargs["policy"] = DecisionPolicy.from_dict(payload["policy"])
        if "seed" in payload:
            kwargs["seed"] = int(payload["seed"])
        return cls(**kwargs)


def enumerate_grid(spec: GridSpec, max_configs: int = DEFAULT_MAX_CONFIGS) -> list[PipelineConfig]:
    """Full Cartesian product of the candidate lists, in declared field order."""
    count = spec.size()
    if count > max_configs:
        raise GridSizeError(count, max_configs)
    configs: list[PipelineConfig] = []
    for n, w1, w2, w3, max_features, C, v1, v2, v3 in itertools.product(
        spec.n, spec.w1, spec.w2, spec.w3, spec.max_features, spec.C, spec.v1, spec.v2, spec.v3
    ):
        configs.append(
            PipelineConfig(
                word=BlockSpec((1, n), max_features, w1),
                char=BlockSpec((1, n), max_features, w2),
                char_wb=BlockSpec((1, n), max_features, w3),
                classifier=spec.classifier,
                svc=SvcParams(C=C, balanced=spec.balanced),
                forest=ForestParams(n_trees=spec.n_trees),
                k=spec.k,
                vote_weights=(v1, v2, v3),
                policy=spec.policy,
                seed=spec.seed,
            )
        )
    return configs


def _worker_count() -> int:
    raw = os.environ.get("LAHJA_THREADS", "1")
    try:
        count = int(raw)
    except ValueError:
        raise ValueError(f"LAHJA_THREADS must be an integer, got {raw!r}") from None
    return max(1, count)


def _evaluate_config(args: tuple[Dataset, Dataset, PipelineConfig]) -> MetricsReport:
    train, dev, config = args
    return run_pipeline(train, dev, config)


def run_sweep(
    train: Dataset,
    dev: Dataset,
    spec: GridSpec,
    max_configs: int = DEFAULT_MAX_CONFIGS,
    workers: int | None = None,
) -> list[tuple[PipelineConfig, MetricsReport]]:
    """Run every grid configuration and sort results by f1 descending.

    Ties order by the config's canonical JSON serialization. ``workers``
    defaults to the LAHJA_THREADS cap.
    """
    configs = enumerate_grid(spec, max_configs=max_configs)
    if workers is None:
        workers = _worker_count()
    workers = min(max(1, workers), len(configs))
    tasks = [(train, dev, config) for config in configs]
    if workers == 1:
        reports = [_evaluate_config(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_evaluate_config, tasks))
    results = list(zip(configs, reports))
    results.sort(key=lambda pair: (-pair[1].f1, pair[0].canonical_json()))
    return results


def write_sweep_tsv(
    results: Sequence[tuple[PipelineConfig, MetricsReport]], destination: str | Path | IO[str]
) -> None:
    """Write sweep results as TSV: f1, precision, recall, macro_f1, config JSON."""
    lines = ["f1\tprecision\trecall\tmacro_f1\tconfig\n"]
    for config, report in results:
        lines.append(
            f"{report.f1:.6f}\t{report.precision:.6f}\t{report.recall:.6f}"
            f"\t{report.macro_f1:.6f}\t{config.canonical_json()}\n"
        )
    text = "".join(lines)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")
