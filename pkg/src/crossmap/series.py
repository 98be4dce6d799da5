"""Time series containers and delay-embedding index arithmetic.

A scalar series of length L embedded with dimension E and lag tau yields
L - (E-1)*tau delay vectors; point i reads the samples
(x[i], x[i+tau], ..., x[i+(E-1)tau]). Distances between delay vectors do
not depend on coordinate order, so this forward-shifted layout is
interchangeable with the backward-lag convention while keeping memory
access strictly ascending.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import ParameterError, SeriesTooShortError

#: Upper bound on the embedding dimension unless a caller overrides it.
DEFAULT_E_MAX = 20


def _validated_values(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise ParameterError(f"expected a 1-D sequence of observations, got shape {arr.shape}")
    if arr.size < 1:
        raise SeriesTooShortError("a series needs at least one observation")
    if not np.all(np.isfinite(arr)):
        pos = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ParameterError(f"non-finite observation at position {pos}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """One uniformly sampled scalar observation sequence with a label."""

    values: np.ndarray
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", _validated_values(self.values))

    def __len__(self) -> int:
        return int(self.values.size)


def as_values(series) -> np.ndarray:
    """Return the validated float64 array behind a series-like object."""
    if isinstance(series, TimeSeries):
        return series.values
    return _validated_values(series)


@dataclass(frozen=True)
class EmbeddingSpec:
    """State-space reconstruction geometry: dimension E and lag tau in samples."""

    E: int
    tau: int = 1
    e_max: int = field(default=DEFAULT_E_MAX, compare=False)

    def __post_init__(self):
        if self.tau < 1:
            raise ParameterError(f"lag must be >= 1, got {self.tau}")
        if self.E < 1:
            raise ParameterError(f"embedding dimension must be >= 1, got {self.E}")
        if self.E > self.e_max:
            raise ParameterError(f"embedding dimension {self.E} exceeds the bound {self.e_max}")

    @property
    def span(self) -> int:
        """Samples between the first and last coordinate of one delay vector."""
        return (self.E - 1) * self.tau

    def point_count(self, length: int) -> int:
        """Raw number of delay vectors a series of this length yields (may be <= 0)."""
        return length - self.span


def valid_count(length: int, spec: EmbeddingSpec) -> int:
    """Number of embedded points usable for neighbor search.

    Raises SeriesTooShortError when fewer than E + 2 points remain, the
    minimum that still admits E + 1 neighbors once a point excludes itself.
    """
    if length < 1:
        raise SeriesTooShortError("a series needs at least one observation")
    count = spec.point_count(length)
    if count < spec.E + 2:
        raise SeriesTooShortError(
            f"series of length {length} yields {count} embedded points for "
            f"E={spec.E}, tau={spec.tau}; neighbor search needs at least {spec.E + 2}"
        )
    return count


def embedded_point(series, spec: EmbeddingSpec, i: int) -> np.ndarray:
    """Delay vector (x[i], x[i+tau], ..., x[i+(E-1)tau]) as a fresh array."""
    v = as_values(series)
    count = spec.point_count(len(v))
    if not 0 <= i < count:
        raise ParameterError(f"point index {i} outside [0, {max(count, 0)})")
    return v[i : i + spec.span + 1 : spec.tau].copy()


@dataclass(frozen=True, eq=False)
class Dataset:
    """Named collection of equal-length series (the columns of an input file)."""

    series: tuple[TimeSeries, ...]

    def __post_init__(self):
        series = tuple(self.series)
        if not series:
            raise ParameterError("a dataset needs at least one series")
        lengths = {len(s) for s in series}
        if len(lengths) != 1:
            raise ParameterError(f"series lengths differ: {sorted(lengths)}")
        names = [s.name for s in series]
        duplicates = {n for n in names if names.count(n) > 1}
        if duplicates:
            raise ParameterError(f"duplicate series names: {sorted(duplicates)}")
        object.__setattr__(self, "series", series)

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.series]

    @property
    def length(self) -> int:
        return len(self.series[0])

    def __len__(self) -> int:
        return len(self.series)

    def __iter__(self) -> Iterator[TimeSeries]:
        return iter(self.series)

    def __getitem__(self, index: int) -> TimeSeries:
        return self.series[index]
