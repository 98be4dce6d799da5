"""Seeded synthetic series for tests, demos, and benchmarks.

Every generator draws from numpy's default PCG64 stream
(``np.random.default_rng(seed)``), so a fixed (kind, length, seed, params)
combination reproduces bit-identically across platforms.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError, SeriesTooShortError
from .series import Dataset, TimeSeries

KINDS = ("uniform-noise", "logistic-map", "coupled-logistic")


def _check_length(length: int) -> int:
    if length < 1:
        raise SeriesTooShortError(f"length must be >= 1, got {length}")
    return int(length)


def _check_rate(r: float) -> float:
    if not 0.0 < r <= 4.0:
        raise ParameterError(f"logistic rate must lie in (0, 4], got {r}")
    return float(r)


def uniform_noise(length: int, seed: int, low: float = 0.0, high: float = 1.0,
                  name: str = "noise") -> TimeSeries:
    """Independent draws from Uniform[low, high)."""
    _check_length(length)
    if not low < high:
        raise ParameterError(f"need low < high, got [{low}, {high})")
    rng = np.random.default_rng(seed)
    return TimeSeries(rng.uniform(low, high, size=length), name)


def logistic_map(length: int, seed: int | None = None, r: float = 3.8,
                 v0: float | None = None, name: str = "logistic") -> TimeSeries:
    """Iterate v <- r * v * (1 - v) from v0, recording the start value first.

    When v0 is omitted it is drawn from the seeded stream; with v0 given the
    seed is irrelevant.
    """
    _check_length(length)
    _check_rate(r)
    if v0 is None:
        v0 = float(np.random.default_rng(seed).uniform(0.05, 0.95))
    if not 0.0 <= v0 <= 1.0:
        raise ParameterError(f"initial value must lie in [0, 1], got {v0}")
    out = np.empty(length)
    v = float(v0)
    for t in range(length):
        out[t] = v
        v = r * v * (1.0 - v)
    return TimeSeries(out, name)


def coupled_logistic(length: int, seed: int, beta: float = 0.4,
                     r_driver: float = 3.8, r_response: float = 3.5,
                     burn_in: int = 200) -> Dataset:
    """Two logistic maps with one-directional coupling driver -> response.

    The driver evolves freely; the response loses growth in proportion to
    the driver's state:

        d <- r_d * d * (1 - d)
        y <- y * (r_y - r_y * y - beta * d)

    beta = 0 decouples the two maps entirely. A burn-in discards the initial
    transient before recording.
    """
    _check_length(length)
    _check_rate(r_driver)
    _check_rate(r_response)
    if not 0.0 <= beta <= 1.0:
        raise ParameterError(f"coupling strength must lie in [0, 1], got {beta}")
    if burn_in < 0:
        raise ParameterError(f"burn-in must be >= 0, got {burn_in}")
    rng = np.random.default_rng(seed)
    d = float(rng.uniform(0.1, 0.9))
    y = float(rng.uniform(0.1, 0.9))
    driver = np.empty(length)
    response = np.empty(length)
    for t in range(-burn_in, length):
        if t >= 0:
            driver[t] = d
            response[t] = y
        d_next = r_driver * d * (1.0 - d)
        y_next = y * (r_response - r_response * y - beta * d)
        d, y = d_next, y_next
        if not (np.isfinite(d) and np.isfinite(y)):
            raise ParameterError(
                f"coupled map diverged at step {t} (beta={beta}, "
                f"r_driver={r_driver}, r_response={r_response})"
            )
    return Dataset((TimeSeries(driver, "driver"), TimeSeries(response, "response")))


def gen_synthetic(kind: str, length: int, seed: int, params: dict | None = None) -> Dataset:
    """Dispatch on kind; returns a Dataset even for single-series kinds."""
    params = dict(params or {})
    if kind == "uniform-noise":
        return Dataset((uniform_noise(length, seed, **params),))
    if kind == "logistic-map":
        return Dataset((logistic_map(length, seed, **params),))
    if kind == "coupled-logistic":
        return coupled_logistic(length, seed, **params)
    raise ParameterError(f"unknown synthetic kind {kind!r}; choose from {KINDS}")
