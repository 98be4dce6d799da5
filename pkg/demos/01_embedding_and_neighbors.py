"""From a raw series to a neighbor lookup table, step by step.

Run: python demos/01_embedding_and_neighbors.py
"""

import numpy as np

from crossmap import (
    EmbeddingSpec,
    build_knn_table,
    embedded_point,
    logistic_map,
    pairwise_distances,
    valid_count,
)

# A short chaotic series and a 3-dimensional embedding with lag 2.
series = logistic_map(40, seed=1, r=3.9)
spec = EmbeddingSpec(E=3, tau=2)

n = valid_count(len(series), spec)
print(f"series length {len(series)}, E={spec.E}, tau={spec.tau} "
      f"-> {n} embedded points (span {spec.span} samples)")

# Each embedded point is just a strided read of the raw series.
for i in (0, 1, n - 1):
    print(f"  point {i}: {np.round(embedded_point(series, spec, i), 4)}")

# The distance kernel never materializes those vectors; it reads the raw
# series directly and produces squared distances.
dmat = pairwise_distances(series, spec)
print(f"\ndistance matrix {dmat.values.shape}, symmetric, zero diagonal")
print("  corner:\n", np.round(dmat.values[:3, :3], 4))

# The neighbor table keeps each point's E+1 nearest points (never itself)
# with weights exp(-d/dmin) normalized to sum to one.
table = build_knn_table(series, spec)
print(f"\nneighbor table: {table.n} rows x {table.k} neighbors")
print("  row 0 indices:", table.indices[0])
print("  row 0 weights:", np.round(table.weights[0], 4), "sum", table.weights[0].sum())

# Weights always decay left to right: the nearest neighbor dominates.
print("  heaviest first weight overall:", round(table.weights[:, 0].max(), 4))
