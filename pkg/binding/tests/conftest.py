import numpy as np
import pytest

from crossmap import Dataset, TimeSeries, coupled_logistic, logistic_map, uniform_noise


def make_mixed_dataset(length=2000, seed=1234) -> Dataset:
    """Same 20-series mix the core acceptance suite runs."""
    rng = np.random.default_rng(seed)
    out = []
    for i, r in enumerate((3.58, 3.62, 3.7, 3.74, 3.82, 3.87, 3.92, 3.99)):
        out.append(TimeSeries(logistic_map(length, seed=seed + i, r=r).values, f"log{i}"))
    for i, beta in enumerate((0.25, 0.35, 0.5)):
        pair = coupled_logistic(length, seed=seed + 50 + i, beta=beta)
        out.append(TimeSeries(pair[0].values, f"drv{i}"))
        out.append(TimeSeries(pair[1].values, f"rsp{i}"))
    for i in range(4):
        out.append(TimeSeries(uniform_noise(length, seed=seed + 90 + i).values, f"noise{i}"))
    steps = np.arange(length)
    for i, period in enumerate((47.0, 131.0)):
        values = np.sin(2 * np.pi * steps / period) + 0.05 * rng.standard_normal(length)
        out.append(TimeSeries(values, f"sine{i}"))
    return Dataset(tuple(out))


@pytest.fixture(scope="session")
def mixed_dataset() -> Dataset:
    return make_mixed_dataset()
