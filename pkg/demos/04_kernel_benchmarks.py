"""Kernel timings over an embedding-dimension sweep, at a modest scale.

The distance phase grows with E (more coordinates per point) while top-k
selection stays nearly flat (k = E + 1 is tiny next to n). The same rows
come out of the command line as
`crossmap --bench knn --length 4000 --erange 1:20`.

Run: python demos/04_kernel_benchmarks.py
"""

import os

from crossmap import run_bench
from crossmap.bench import bench_rows_to_csv

workers = os.cpu_count() or 1
print(f"knn kernel sweep, L=4000, workers={workers}")
rows = run_bench("knn", length=4000, e_range=(1, 20), seed=0, workers=workers)
print(bench_rows_to_csv(rows))

print("lookup sweep, L=2000, 200 targets")
rows = run_bench("lookup", length=2000, count=200, e_range=(1, 10), seed=0, workers=workers)
print(bench_rows_to_csv(rows))

print("worker comparison on one distance+topk pass (L=4000, E=20):")
for w in sorted({1, workers}):
    total = sum(r.seconds for r in run_bench("knn", length=4000, e_range=(20, 20),
                                             seed=0, workers=w))
    print(f"  workers={w}: {total:.3f}s")
