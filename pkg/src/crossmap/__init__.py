"""Empirical dynamic modeling at desk scale.

Delay embeddings, all-k-nearest-neighbor lookup tables, simplex cross-map
prediction with streaming Pearson skill, and pairwise convergent cross
mapping over whole datasets. Kernels are plain numpy parallelized over row
tiles; results are deterministic for any worker count.
"""

from .bench import BenchRow, run_bench
from .ccm import CcmConfig, CcmStats, SkillMatrix, ccm_pairwise, group_by_optimal_e
from .errors import (
    CrossmapError,
    CsvFormatError,
    ParameterError,
    SeriesTooShortError,
    ZeroVarianceError,
)
from .io import load_csv, read_skill_matrix, write_skill_matrix
from .knn import (
    DistanceMatrix,
    NeighborTable,
    build_knn_table,
    normalize_to_weights,
    oracle_knn,
    pairwise_distances,
    partial_sort_topk,
)
from .prediction import (
    OptimalEmbedding,
    PearsonAggregate,
    PredictionOutput,
    lookup_batch,
    optimal_embedding,
    pearson_stream,
    simplex_self_predict,
)
from .series import (
    DEFAULT_E_MAX,
    Dataset,
    EmbeddingSpec,
    TimeSeries,
    embedded_point,
    valid_count,
)
from .synthetic import coupled_logistic, gen_synthetic, logistic_map, uniform_noise

__version__ = "0.1.0"

__all__ = [
    "BenchRow",
    "CcmConfig",
    "CcmStats",
    "CrossmapError",
    "CsvFormatError",
    "Dataset",
    "DEFAULT_E_MAX",
    "DistanceMatrix",
    "EmbeddingSpec",
    "NeighborTable",
    "OptimalEmbedding",
    "ParameterError",
    "PearsonAggregate",
    "PredictionOutput",
    "SeriesTooShortError",
    "SkillMatrix",
    "TimeSeries",
    "ZeroVarianceError",
    "build_knn_table",
    "ccm_pairwise",
    "coupled_logistic",
    "embedded_point",
    "gen_synthetic",
    "group_by_optimal_e",
    "load_csv",
    "logistic_map",
    "lookup_batch",
    "normalize_to_weights",
    "optimal_embedding",
    "oracle_knn",
    "pairwise_distances",
    "partial_sort_topk",
    "pearson_stream",
    "read_skill_matrix",
    "run_bench",
    "simplex_self_predict",
    "uniform_noise",
    "valid_count",
    "write_skill_matrix",
]
