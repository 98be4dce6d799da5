"""Simplex cross-map prediction and streaming skill assessment.

A prediction for embedded point j is the convex combination of target
values at the j-th row's neighbor times. Skill is Pearson correlation
between the observed and predicted segments, accumulated one block at a
time through mergeable partial aggregates (count, means, co-moments) so
the result does not depend on how the stream is chunked or reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from ._parallel import resolve_workers, run_tiled
from .errors import ParameterError, SeriesTooShortError, ZeroVarianceError
from .knn import NeighborTable, build_knn_table, normalize_to_weights, partial_sort_topk
from .series import DEFAULT_E_MAX, EmbeddingSpec, as_values, valid_count

_BLOCK = 4096


@dataclass(frozen=True)
class PearsonAggregate:
    """Mergeable single-pass correlation state.

    Merging two aggregates shifts the co-moments by the mean gap scaled with
    n_a * n_b / n, the numerically stable pooling rule; any grouping of
    merges yields the same correlation to ~1e-15.
    """

    count: int
    mean_a: float
    mean_b: float
    m2_a: float
    m2_b: float
    comoment: float

    @classmethod
    def empty(cls) -> "PearsonAggregate":
        return cls(0, 0.0, 0.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_arrays(cls, a: np.ndarray, b: np.ndarray) -> "PearsonAggregate":
        n = a.size
        if n == 0:
            return cls.empty()
        mean_a = float(a.mean())
        mean_b = float(b.mean())
        dev_a = a - mean_a
        dev_b = b - mean_b
        return cls(int(n), mean_a, mean_b, float(dev_a @ dev_a), float(dev_b @ dev_b),
                   float(dev_a @ dev_b))

    def merge(self, other: "PearsonAggregate") -> "PearsonAggregate":
        if self.count == 0:
            return other
        if other.count == 0:
            return self
        n = self.count + other.count
        gap_a = other.mean_a - self.mean_a
        gap_b = other.mean_b - self.mean_b
        pooled = self.count * other.count / n
        return PearsonAggregate(
            n,
            self.mean_a + gap_a * other.count / n,
            self.mean_b + gap_b * other.count / n,
            self.m2_a + other.m2_a + gap_a * gap_a * pooled,
            self.m2_b + other.m2_b + gap_b * gap_b * pooled,
            self.comoment + other.comoment + gap_a * gap_b * pooled,
        )

    def correlation(self) -> float | None:
        """Pearson rho, or None when either side has no variance."""
        if self.count < 2 or self.m2_a <= 0.0 or self.m2_b <= 0.0:
            return None
        return float(np.clip(self.comoment / sqrt(self.m2_a * self.m2_b), -1.0, 1.0))


def pearson_stream(a, b) -> float:
    """Correlation of two equal-length sequences via streaming aggregates.

    Matches the two-pass textbook formula to ~1e-14 relative. Raises
    ZeroVarianceError when either input is constant.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 1 or b.ndim != 1:
        raise ParameterError("correlation inputs must be 1-D")
    if a.size != b.size:
        raise ParameterError(f"length mismatch: {a.size} vs {b.size}")
    if a.size < 2:
        raise ParameterError("correlation needs at least 2 observations")
    agg = PearsonAggregate.empty()
    for start in range(0, a.size, _BLOCK):
        stop = min(start + _BLOCK, a.size)
        agg = agg.merge(PearsonAggregate.from_arrays(a[start:stop], b[start:stop]))
    rho = agg.correlation()
    if rho is None:
        raise ZeroVarianceError("correlation undefined: an input has zero variance")
    return rho


@dataclass(frozen=True, eq=False)
class PredictionOutput:
    """Skill and optional predicted values for one target.

    rho is None when the correlation is undefined (constant observed or
    predicted segment); that marker never silently propagates as NaN.
    """

    rho: float | None
    predicted: np.ndarray | None = None

    @property
    def defined(self) -> bool:
        return self.rho is not None


def lookup_batch(table: NeighborTable, targets, want_predictions: bool = False,
                 workers: int | None = None) -> list[PredictionOutput]:
    """Cross-map every target through one precomputed neighbor table.

    Target sample positions are the neighbor point indices shifted by
    (E-1)*tau, aligning embedded points with the time base the table's
    library was embedded on. Each target needs at least table.n + (E-1)*tau
    samples. Predicted series are materialized only on request; skill is
    accumulated block-by-block either way, so the flag cannot change rho.
    """
    targets = list(targets)
    offset = table.spec.span
    n = table.n
    shifted = table.indices + offset
    outputs: list[PredictionOutput | None] = [None] * len(targets)

    def predict_one(t: int) -> None:
        y = np.ascontiguousarray(as_values(targets[t]))  # contiguous staging before gathers
        if y.size < n + offset:
            raise ParameterError(
                f"target {t} has {y.size} samples; table needs at least {n + offset}"
            )
        observed = y[offset : offset + n]
        predicted = np.empty(n, dtype=np.float64) if want_predictions else None
        agg = PearsonAggregate.empty()
        for start in range(0, n, _BLOCK):
            stop = min(start + _BLOCK, n)
            gathered = y[shifted[start:stop]]
            block_pred = np.einsum("ij,ij->i", table.weights[start:stop], gathered)
            agg = agg.merge(PearsonAggregate.from_arrays(observed[start:stop], block_pred))
            if predicted is not None:
                predicted[start:stop] = block_pred
        outputs[t] = PredictionOutput(rho=agg.correlation(), predicted=predicted)

    def span(start: int, stop: int) -> None:
        for t in range(start, stop):
            predict_one(t)

    run_tiled(len(targets), span, resolve_workers(workers), tile=1)
    return outputs  # type: ignore[return-value]


def simplex_self_predict(series, spec: EmbeddingSpec, tp: int = 1,
                         workers: int | None = None) -> float:
    """Forecast a series tp steps ahead from its own reconstructed manifold.

    The neighbor table is built on the series minus its last tp samples, so
    every neighbor has an observable future; the tp-shifted series is then
    looked up contemporaneously. Only the exact self point is excluded from
    the neighbor candidates.
    """
    v = as_values(series)
    if tp < 1:
        raise ParameterError(f"prediction horizon must be >= 1, got {tp}")
    if len(v) <= tp:
        raise SeriesTooShortError(f"series of length {len(v)} cannot support horizon {tp}")
    table = build_knn_table(v[: len(v) - tp], spec, workers=workers)
    result = lookup_batch(table, [v[tp:]], workers=workers)[0]
    if result.rho is None:
        raise ZeroVarianceError("self-prediction skill undefined: constant values over the forecast range")
    return result.rho


@dataclass(frozen=True)
class OptimalEmbedding:
    """Argmax of self-prediction skill over candidate dimensions, plus the full curve."""

    e_star: int
    rho_by_e: dict[int, float]

    def __post_init__(self):
        if self.e_star not in self.rho_by_e:
            raise ParameterError(f"optimal dimension {self.e_star} missing from the skill curve")


def _self_skill_curve(v: np.ndarray, e_max: int, tau: int, tp: int,
                      workers: int | None) -> dict[int, float]:
    """Skill for every E in [1, e_max] sharing one incrementally grown distance matrix.

    Growing E adds exactly one squared-difference term on a shrinking valid
    range, accumulated in the same order as the one-shot kernel, so every
    per-E table is bit-identical to building it from scratch.
    """
    lib = v[: len(v) - tp]
    target = v[tp:]
    resolved = resolve_workers(workers)
    n1 = len(lib)
    dist = np.empty((n1, n1), dtype=np.float64)

    def base(start: int, stop: int) -> None:
        block = dist[start:stop]
        np.subtract(lib[start:stop, None], lib[None, :], out=block)
        np.multiply(block, block, out=block)

    run_tiled(n1, base, resolved)
    curve: dict[int, float] = {}
    for e in range(1, e_max + 1):
        n_e = n1 - (e - 1) * tau
        if e > 1:
            offset = (e - 1) * tau
            column = lib[offset : offset + n_e]

            def grow(start: int, stop: int) -> None:
                block = dist[start:stop, :n_e]
                tmp = np.subtract(column[start:stop, None], column[None, :])
                np.multiply(tmp, tmp, out=tmp)
                block += tmp

            run_tiled(n_e, grow, resolved)
        spec = EmbeddingSpec(e, tau, e_max=e_max)
        top_d, top_i = partial_sort_topk(dist[:n_e, :n_e], e + 1, workers=resolved)
        table = NeighborTable(top_i, normalize_to_weights(top_d), spec)
        rho = lookup_batch(table, [target], workers=resolved)[0].rho
        if rho is None:
            raise ZeroVarianceError(
                f"self-prediction skill undefined at E={e}: constant values over the forecast range"
            )
        curve[e] = rho
    return curve


def optimal_embedding(series, e_max: int = DEFAULT_E_MAX, tau: int = 1, tp: int = 1,
                      workers: int | None = None) -> OptimalEmbedding:
    """Self-prediction skill for E in [1, e_max]; best E wins, ties to the smaller E."""
    v = as_values(series)
    if e_max < 1:
        raise ParameterError(f"dimension bound must be >= 1, got {e_max}")
    if tp < 1:
        raise ParameterError(f"prediction horizon must be >= 1, got {tp}")
    if v.min() == v.max():
        raise ZeroVarianceError("cannot search embeddings of a constant series")
    if len(v) <= tp:
        raise SeriesTooShortError(f"series of length {len(v)} cannot support horizon {tp}")
    # The largest candidate is the binding constraint; fail fast with context.
    valid_count(len(v) - tp, EmbeddingSpec(e_max, tau, e_max=e_max))
    curve = _self_skill_curve(v, e_max, tau, tp, workers)
    best_e = 1
    for e in range(2, e_max + 1):
        if curve[e] > curve[best_e]:
            best_e = e
    return OptimalEmbedding(best_e, curve)
