import pytest

from crossmap import ParameterError, run_bench
from crossmap.bench import bench_rows_to_csv


def test_knn_bench_row_shape():
    rows = run_bench("knn", length=500, e_range=(1, 20), seed=7, workers=1)
    assert len(rows) == 40
    assert sum(1 for r in rows if r.phase == "distance") == 20
    assert sum(1 for r in rows if r.phase == "topk") == 20
    assert [r.e for r in rows if r.phase == "distance"] == list(range(1, 21))
    assert all(r.seconds >= 0.0 for r in rows)


def test_lookup_bench_row_shape():
    rows = run_bench("lookup", length=300, count=20, e_range=(1, 3), seed=7, workers=1)
    assert [(r.e, r.phase) for r in rows] == [(1, "lookup"), (2, "lookup"), (3, "lookup")]


def test_same_seed_same_data_timings_not_asserted():
    # determinism covers the generated data, never the clock
    a = run_bench("knn", length=300, e_range=(2, 2), seed=3, workers=1)
    b = run_bench("knn", length=300, e_range=(2, 2), seed=3, workers=1)
    assert [(r.e, r.phase) for r in a] == [(r.e, r.phase) for r in b]


def test_desk_scale_bounds():
    with pytest.raises(ParameterError, match="desk-scale"):
        run_bench("knn", length=20_000)
    with pytest.raises(ParameterError, match="desk-scale"):
        run_bench("lookup", length=100, count=20_000)
    rows = run_bench("knn", length=300, e_range=(1, 1), allow_large=True, workers=1)
    assert len(rows) == 2


def test_unknown_kind():
    with pytest.raises(ParameterError, match="unknown bench kind"):
        run_bench("sort")


def test_csv_rendering():
    rows = run_bench("knn", length=300, e_range=(1, 2), seed=0, workers=1)
    text = bench_rows_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "E,phase,seconds"
    assert len(lines) == 5
    assert lines[1].startswith("1,distance,")
