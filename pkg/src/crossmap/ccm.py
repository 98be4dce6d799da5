"""Pairwise convergent cross mapping over a dataset.

For every series the pipeline first finds the embedding dimension that best
self-predicts it, groups targets sharing that dimension, and then walks the
libraries: one neighbor table per (library, distinct dimension) pair serves
every target in the matching group. Tables are therefore built
N * distinct(E) times rather than N^2 times, and peak memory stays at one
distance matrix plus one table.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError, ZeroVarianceError
from .knn import build_knn_table
from .prediction import OptimalEmbedding, lookup_batch, optimal_embedding
from .series import DEFAULT_E_MAX, Dataset, EmbeddingSpec


@dataclass(frozen=True)
class CcmConfig:
    """Pipeline parameters; defaults mirror common desk-scale practice."""

    e_max: int = DEFAULT_E_MAX
    tau: int = 1
    tp_search: int = 1
    emit_predictions: bool = False

    def __post_init__(self):
        if self.e_max < 1:
            raise ParameterError(f"e_max must be >= 1, got {self.e_max}")
        if self.tau < 1:
            raise ParameterError(f"tau must be >= 1, got {self.tau}")
        if self.tp_search < 1:
            raise ParameterError(f"tp_search must be >= 1, got {self.tp_search}")


@dataclass
class CcmStats:
    """Phase timings and scheduling counters from one pipeline run."""

    seconds_optimal_e: float = 0.0
    seconds_table_build: float = 0.0
    seconds_lookup: float = 0.0
    tables_built: int = 0
    distinct_e: int = 0
    n_series: int = 0
    series_length: int = 0


@dataclass(frozen=True, eq=False)
class SkillMatrix:
    """rho[library][target] for every ordered pair; NaN marks undefined skill."""

    names: list[str]
    rho: np.ndarray
    stats: CcmStats | None = None
    predictions: dict[tuple[int, int], np.ndarray] | None = None

    def __post_init__(self):
        arr = np.asarray(self.rho, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ParameterError(f"skill matrix must be square, got shape {arr.shape}")
        if len(self.names) != arr.shape[0]:
            raise ParameterError(f"{len(self.names)} names for a {arr.shape[0]}-row matrix")
        finite = arr[np.isfinite(arr)]
        if finite.size and (finite.min() < -1.0 or finite.max() > 1.0):
            raise ParameterError("finite skill entries must lie in [-1, 1]")
        object.__setattr__(self, "rho", arr)
        object.__setattr__(self, "names", list(self.names))

    @property
    def n(self) -> int:
        return int(self.rho.shape[0])

    @property
    def defined(self) -> np.ndarray:
        return np.isfinite(self.rho)


def group_by_optimal_e(embeddings: Sequence[OptimalEmbedding]) -> dict[int, list[int]]:
    """Partition series positions by their optimal embedding dimension."""
    groups: dict[int, list[int]] = {}
    for i, emb in enumerate(embeddings):
        groups.setdefault(emb.e_star, []).append(i)
    return groups


def ccm_pairwise(data: Dataset, cfg: CcmConfig | None = None, workers: int | None = None,
                 e_star: Sequence[int] | None = None) -> SkillMatrix:
    """Full N x N cross-map skill matrix, diagonal included.

    Zero-variance series cannot be cross-mapped; every pair involving one is
    marked undefined rather than failing the run. Pass e_star to reuse
    embedding dimensions computed elsewhere and skip the search phase.
    """
    cfg = cfg or CcmConfig()
    n = len(data)
    stats = CcmStats(n_series=n, series_length=data.length)
    stars: list[int | None] = [None] * n
    if e_star is not None:
        if len(e_star) != n:
            raise ParameterError(f"{len(e_star)} dimension overrides for {n} series")
        for i, e in enumerate(e_star):
            if not 1 <= int(e) <= cfg.e_max:
                raise ParameterError(f"dimension override {e} outside [1, {cfg.e_max}]")
            stars[i] = int(e)
    else:
        began = time.perf_counter()
        for i, series in enumerate(data):
            try:
                stars[i] = optimal_embedding(series, cfg.e_max, cfg.tau, cfg.tp_search,
                                             workers=workers).e_star
            except ZeroVarianceError:
                stars[i] = None  # marked undefined below, not fatal
        stats.seconds_optimal_e = time.perf_counter() - began

    groups: dict[int, list[int]] = {}
    for i, star in enumerate(stars):
        if star is not None:
            groups.setdefault(star, []).append(i)
    stats.distinct_e = len(groups)

    rho = np.full((n, n), np.nan)
    predictions: dict[tuple[int, int], np.ndarray] = {}
    for lib in range(n):
        if stars[lib] is None:
            continue  # a constant library has no usable manifold
        for e in sorted(groups):
            spec = EmbeddingSpec(e, cfg.tau, e_max=cfg.e_max)
            began = time.perf_counter()
            table = build_knn_table(data[lib], spec, workers=workers)
            stats.seconds_table_build += time.perf_counter() - began
            stats.tables_built += 1
            target_ids = groups[e]
            began = time.perf_counter()
            outputs = lookup_batch(table, [data[t] for t in target_ids],
                                   want_predictions=cfg.emit_predictions, workers=workers)
            stats.seconds_lookup += time.perf_counter() - began
            for t, out in zip(target_ids, outputs):
                if out.rho is not None:
                    rho[lib, t] = out.rho
                if cfg.emit_predictions and out.predicted is not None:
                    predictions[(lib, t)] = out.predicted
    return SkillMatrix(data.names, rho, stats=stats,
                       predictions=predictions if cfg.emit_predictions else None)
