"""All-k-nearest-neighbor lookup tables over delay embeddings.

The distance kernel fuses the embedding into the distance computation:
delay-vector coordinates are read straight from the raw series inside the
kernel, and the embedding is never materialized. Distances stay SQUARED
until weight normalization takes the single square root, which saves n^2
root evaluations.

Neighbor selection excludes the query point itself (keeping it would leak
the target's own value into cross-map predictions) and breaks distance
ties toward the smaller point index, which makes every output
deterministic and comparable against a full-sort reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import resolve_workers, run_tiled
from .errors import ParameterError, SeriesTooShortError
from .series import EmbeddingSpec, as_values, valid_count

#: Weights this far below the row maximum have underflowed exp(); floored to
#: stay strictly positive without measurably changing the simplex.
_TINY = np.finfo(np.float64).tiny


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Square matrix of SQUARED Euclidean distances between embedded points."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ParameterError(f"distance matrix must be square, got shape {arr.shape}")
        if np.any(np.diagonal(arr) != 0.0):
            raise ParameterError("distance matrix diagonal must be exactly zero")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True, eq=False)
class NeighborTable:
    """Per-point neighbor indices and normalized simplex weights.

    Row i holds the k nearest embedded points to point i (self excluded),
    ascending by distance, with weights exp(-d/dmin) normalized to sum to 1.
    The embedding geometry the table was built with rides along so lookups
    can translate point indices into target sample positions.
    """

    indices: np.ndarray
    weights: np.ndarray
    spec: EmbeddingSpec

    def __post_init__(self):
        idx = np.asarray(self.indices)
        w = np.asarray(self.weights, dtype=np.float64)
        if idx.ndim != 2 or idx.shape != w.shape:
            raise ParameterError(
                f"indices {idx.shape} and weights {w.shape} must be matching 2-D arrays"
            )
        n, k = idx.shape
        if not np.issubdtype(idx.dtype, np.integer):
            raise ParameterError("neighbor indices must be integers")
        if idx.min(initial=0) < 0 or idx.max(initial=0) >= n:
            raise ParameterError(f"neighbor indices must lie in [0, {n})")
        if np.any(idx == np.arange(n)[:, None]):
            raise ParameterError("a point may not be its own neighbor")
        if k > 1 and np.any(np.diff(np.sort(idx, axis=1), axis=1) == 0):
            raise ParameterError("neighbor indices must be distinct per row")
        if np.any(w <= 0.0) or np.any(w > 1.0):
            raise ParameterError("weights must lie in (0, 1]")
        if np.any(np.abs(w.sum(axis=1) - 1.0) > 1e-6):
            raise ParameterError("weight rows must sum to 1")
        if k > 1 and np.any(np.diff(w, axis=1) > 1e-12):
            raise ParameterError("weight rows must be non-increasing")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return int(self.indices.shape[0])

    @property
    def k(self) -> int:
        return int(self.indices.shape[1])


def pairwise_distances(series, spec: EmbeddingSpec, workers: int | None = None) -> DistanceMatrix:
    """Squared distances between all pairs of delay vectors of one series.

    Entry (i, j) is sum_e (x[i+e*tau] - x[j+e*tau])^2 for e in [0, E).
    Coordinates are read from the raw series inside the kernel; row tiles
    bound the temporary working set and parallelize cleanly.
    """
    v = as_values(series)
    n = spec.point_count(len(v))
    if n < 2:
        raise SeriesTooShortError(
            f"series of length {len(v)} yields {n} embedded points for "
            f"E={spec.E}, tau={spec.tau}; pairwise distances need at least 2"
        )
    offsets = [e * spec.tau for e in range(spec.E)]
    columns = [v[o : o + n] for o in offsets]  # views, one per coordinate
    out = np.empty((n, n), dtype=np.float64)

    def fill(start: int, stop: int) -> None:
        block = out[start:stop]
        tmp = np.empty_like(block)
        for e, (offset, column) in enumerate(zip(offsets, columns)):
            rows = v[start + offset : stop + offset]
            np.subtract(rows[:, None], column[None, :], out=tmp)
            np.multiply(tmp, tmp, out=tmp)
            if e == 0:
                block[:] = tmp
            else:
                block += tmp

    run_tiled(n, fill, resolve_workers(workers))
    return DistanceMatrix(out)


def _repair_tied_rows(block, dst, idx, kth, k):
    """Exact re-selection for rows where equal distances straddle the cut."""
    n_eq_all = np.count_nonzero(block == kth[:, None], axis=1)
    n_eq_kept = np.count_nonzero(dst == kth[:, None], axis=1)
    for r in np.flatnonzero(n_eq_all > n_eq_kept):
        row = block[r]
        candidates = np.flatnonzero(row <= kth[r])
        order = np.lexsort((candidates, row[candidates]))[:k]
        chosen = candidates[order]
        idx[r] = chosen
        dst[r] = row[chosen]


def partial_sort_topk(distances, k: int, workers: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Per row, the k smallest squared distances over columns j != i.

    Returns (squared distances, column indices), each n x k, ascending by
    distance with ties broken toward the smaller column index; row output
    matches a full sort of that row. Selection runs in O(n) per row via
    argpartition, with an exact repair pass for rows where tied values
    straddle the cut.
    """
    vals = distances.values if isinstance(distances, DistanceMatrix) else np.asarray(distances, dtype=np.float64)
    if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
        raise ParameterError(f"expected a square distance matrix, got shape {vals.shape}")
    n = vals.shape[0]
    if not 1 <= k <= n - 1:
        raise ParameterError(f"neighbor count must lie in [1, {n - 1}], got {k}")
    top_d = np.empty((n, k), dtype=np.float64)
    top_i = np.empty((n, k), dtype=np.int64)

    def fill(start: int, stop: int) -> None:
        block = vals[start:stop].copy()
        # Poison each row's own column so the query point never selects itself.
        block[np.arange(stop - start), np.arange(start, stop)] = np.inf
        cand = np.argpartition(block, k - 1, axis=1)[:, :k]
        cand.sort(axis=1)  # ascending index, so the stable value sort breaks ties low
        cd = np.take_along_axis(block, cand, axis=1)
        order = np.argsort(cd, axis=1, kind="stable")
        idx = np.take_along_axis(cand, order, axis=1)
        dst = np.take_along_axis(cd, order, axis=1)
        _repair_tied_rows(block, dst, idx, dst[:, -1], k)
        top_d[start:stop] = dst
        top_i[start:stop] = idx

    run_tiled(n, fill, resolve_workers(workers))
    return top_d, top_i


def normalize_to_weights(top_squared: np.ndarray) -> np.ndarray:
    """Simplex weights from ascending per-row squared distances.

    Per row: d_i = sqrt(squared), raw_i = exp(-d_i / d_min), weights are raw
    normalized to sum to 1. A zero d_min falls back to the smallest positive
    distance in the row; a row of all-zero distances comes out uniform.
    """
    sq = np.asarray(top_squared, dtype=np.float64)
    if sq.ndim != 2:
        raise ParameterError(f"expected an n x k distance array, got shape {sq.shape}")
    if np.any(sq < 0.0):
        raise ParameterError("squared distances must be >= 0")
    if sq.shape[1] > 1 and np.any(np.diff(sq, axis=1) < 0.0):
        raise ParameterError("distance rows must be ascending")
    d = np.sqrt(sq)
    scale = d[:, 0].copy()
    for r in np.flatnonzero(scale == 0.0):
        positive = d[r][d[r] > 0.0]
        # All-zero rows keep scale 1: exp(0) everywhere normalizes to uniform.
        scale[r] = positive[0] if positive.size else 1.0
    raw = np.exp(-d / scale[:, None])
    np.maximum(raw, _TINY, out=raw)
    return raw / raw.sum(axis=1, keepdims=True)


def build_knn_table(series, spec: EmbeddingSpec, k: int | None = None,
                    workers: int | None = None) -> NeighborTable:
    """Distance kernel + top-k selection + weight normalization in one call.

    k defaults to E + 1, the simplex size enclosing a point in E dimensions.
    """
    v = as_values(series)
    valid_count(len(v), spec)
    if k is None:
        k = spec.E + 1
    dmat = pairwise_distances(v, spec, workers=workers)
    top_d, top_i = partial_sort_topk(dmat, k, workers=workers)
    return NeighborTable(top_i, normalize_to_weights(top_d), spec)


def oracle_knn(series, spec: EmbeddingSpec, k: int | None = None) -> NeighborTable:
    """Reference table builder: materialized embedding, full sort, serial.

    Same contract as build_knn_table, written for transparency rather than
    speed; the optimized path is tested against this row by row.
    """
    v = as_values(series)
    n = valid_count(len(v), spec)
    if k is None:
        k = spec.E + 1
    if not 1 <= k <= n - 1:
        raise ParameterError(f"neighbor count must lie in [1, {n - 1}], got {k}")
    embedding = np.column_stack([v[e * spec.tau : e * spec.tau + n] for e in range(spec.E)])
    dmat = np.zeros((n, n), dtype=np.float64)
    for e in range(spec.E):
        coord = embedding[:, e]
        dmat += (coord[:, None] - coord[None, :]) ** 2
    indices = np.empty((n, k), dtype=np.int64)
    weights = np.empty((n, k), dtype=np.float64)
    for i in range(n):
        row = dmat[i].copy()
        row[i] = np.inf
        order = np.lexsort((np.arange(n), row))[:k]
        d = np.sqrt(row[order])
        scale = d[0]
        if scale == 0.0:
            positive = d[d > 0.0]
            scale = positive[0] if positive.size else 1.0
        raw = np.exp(-d / scale)
        np.maximum(raw, _TINY, out=raw)
        indices[i] = order
        weights[i] = raw / raw.sum()
    return NeighborTable(indices, weights, spec)
