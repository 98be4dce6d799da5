"""Thin scripting surface over the crossmap core.

Exactly three entry points for analysts: simplex forecasting skill, optimal
embedding search, and the pairwise cross-map skill matrix. Inputs are plain
numeric arrays plus a name list; caller memory is copied at the boundary
and never mutated, so arrays can be freed or reused immediately after the
call returns. Heavy computation happens inside the core's numpy kernels and
worker threads, which release the interpreter lock during array work, so
long runs do not block other interpreter threads.

Versioned in lockstep with the core.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

import crossmap as _core

__version__ = _core.__version__

__all__ = ["CcmMatrix", "EmbeddingSearch", "ccm_matrix", "optimal_embedding", "simplex"]


class EmbeddingSearch(NamedTuple):
    """Best dimension and the full skill curve (entry i is dimension i + 1)."""

    e_star: int
    skill_by_dim: np.ndarray


class CcmMatrix(NamedTuple):
    """Labeled pairwise skill: skill[i, j] predicts series j from series i's manifold."""

    names: list[str]
    skill: np.ndarray


def _series_1d(series) -> np.ndarray:
    arr = np.array(series, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise _core.ParameterError(f"expected a 1-D series, got shape {arr.shape}")
    return arr


def simplex(series, E: int, tau: int = 1, Tp: int = 1, workers: int | None = None) -> float:
    """Forecast skill of a series predicted Tp steps ahead from its own manifold."""
    spec = _core.EmbeddingSpec(E, tau, e_max=max(E, _core.DEFAULT_E_MAX))
    return _core.simplex_self_predict(_series_1d(series), spec, tp=Tp, workers=workers)


def optimal_embedding(series, E_max: int = _core.DEFAULT_E_MAX, tau: int = 1, Tp: int = 1,
                      workers: int | None = None) -> EmbeddingSearch:
    """Self-prediction skill for every dimension up to E_max; argmax wins."""
    result = _core.optimal_embedding(_series_1d(series), e_max=E_max, tau=tau, tp=Tp,
                                     workers=workers)
    curve = np.array([result.rho_by_e[e] for e in range(1, E_max + 1)])
    return EmbeddingSearch(result.e_star, curve)


def ccm_matrix(values, names: Sequence[str], *, e_max: int = _core.DEFAULT_E_MAX,
               tau: int = 1, tp_search: int = 1, workers: int | None = None) -> CcmMatrix:
    """Pairwise cross-map skill over columns-as-series data.

    values is a 2-D array of shape (time steps, series); names labels the
    columns. Undefined skills (constant series) come back as NaN, matching
    the "NA" cells the command-line tool writes.
    """
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != 2:
        raise _core.ParameterError(f"expected a 2-D (time, series) array, got shape {arr.shape}")
    names = [str(n) for n in names]
    if len(names) != arr.shape[1]:
        raise _core.ParameterError(f"{len(names)} names for {arr.shape[1]} columns")
    data = _core.Dataset(tuple(_core.TimeSeries(arr[:, j], names[j])
                               for j in range(arr.shape[1])))
    cfg = _core.CcmConfig(e_max=e_max, tau=tau, tp_search=tp_search)
    matrix = _core.ccm_pairwise(data, cfg, workers=workers)
    return CcmMatrix(matrix.names, matrix.rho)
