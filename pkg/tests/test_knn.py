import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossmap import (
    EmbeddingSpec,
    NeighborTable,
    ParameterError,
    SeriesTooShortError,
    build_knn_table,
    normalize_to_weights,
    oracle_knn,
    pairwise_distances,
    partial_sort_topk,
    uniform_noise,
)

# frozen with the direct weight formula: exp(-d/dmin) over d = (1, 2, 3)
WEIGHTS_1_4_9 = [0.6652409557748219, 0.24472847105479767, 0.09003057317038046]
# frozen under the degenerate rule: dmin = smallest positive distance = 2
WEIGHTS_0_0_4 = [0.4223187982515182, 0.4223187982515182, 0.15536240349696362]


class TestPairwiseDistances:
    def test_constant_series_all_zero(self):
        d = pairwise_distances([7.0, 7.0, 7.0, 7.0], EmbeddingSpec(1, 1))
        assert d.n == 4
        assert np.array_equal(d.values, np.zeros((4, 4)))

    def test_two_points_single_coordinate(self):
        d = pairwise_distances([0.0, 3.0], EmbeddingSpec(1, 1))
        assert d.values.tolist() == [[0.0, 9.0], [9.0, 0.0]]

    def test_two_dimensional_points(self):
        d = pairwise_distances([0.0, 1.0, 3.0], EmbeddingSpec(2, 1))
        assert d.values.tolist() == [[0.0, 5.0], [5.0, 0.0]]

    def test_too_short(self):
        with pytest.raises(SeriesTooShortError):
            pairwise_distances([1.0, 2.0], EmbeddingSpec(2, 1))

    def test_matches_materialized_embedding(self):
        rng = np.random.default_rng(5)
        v = rng.random(120)
        spec = EmbeddingSpec(3, 2)
        d = pairwise_distances(v, spec).values
        emb = np.column_stack([v[e * 2 : e * 2 + len(d)] for e in range(3)])
        reference = ((emb[:, None, :] - emb[None, :, :]) ** 2).sum(axis=2)
        assert np.allclose(d, reference, atol=1e-12)

    def test_symmetric_and_zero_diagonal(self):
        v = uniform_noise(200, seed=8).values
        d = pairwise_distances(v, EmbeddingSpec(5, 1)).values
        assert np.array_equal(d, d.T)
        assert np.all(np.diagonal(d) == 0.0)

    def test_worker_count_does_not_change_values(self):
        v = uniform_noise(600, seed=9).values
        a = pairwise_distances(v, EmbeddingSpec(4, 1), workers=1).values
        b = pairwise_distances(v, EmbeddingSpec(4, 1), workers=4).values
        assert np.array_equal(a, b)


class TestPartialSortTopk:
    def test_selects_smallest_excluding_self(self):
        m = np.array([[5.0, 1, 3, 2], [1, 0, 2, 3], [3, 2, 0, 1], [2, 3, 1, 0]])
        dist, idx = partial_sort_topk(m, 2)
        assert idx[0].tolist() == [1, 3]
        assert dist[0].tolist() == [1.0, 2.0]

    def test_tie_break_prefers_lower_index(self):
        m = np.ones((4, 4)) - np.eye(4)
        m[0] = [0.0, 1.0, 1.0, 1.0]
        dist, idx = partial_sort_topk(m, 2)
        assert idx[0].tolist() == [1, 2]

    def test_k_equals_n_minus_one_is_full_sort(self):
        rng = np.random.default_rng(0)
        m = rng.random((30, 30))
        m = (m + m.T) / 2
        np.fill_diagonal(m, 0.0)
        dist, idx = partial_sort_topk(m, 29)
        for i in range(30):
            row = m[i].copy()
            row[i] = np.inf
            order = np.lexsort((np.arange(30), row))[:29]
            assert idx[i].tolist() == order.tolist()
            assert np.array_equal(dist[i], row[order])

    @given(n=st.integers(4, 40), k=st.integers(1, 3), seed=st.integers(0, 10_000),
           duplicates=st.booleans())
    @settings(max_examples=60, deadline=None)
    def test_matches_full_sort_reference(self, n, k, seed, duplicates):
        rng = np.random.default_rng(seed)
        if duplicates:
            # coarse grid forces ties, exercising the repair path
            m = rng.integers(0, 4, size=(n, n)).astype(float)
        else:
            m = rng.random((n, n))
        np.fill_diagonal(m, 0.0)
        k = min(k, n - 1)
        dist, idx = partial_sort_topk(m, k)
        for i in range(n):
            row = m[i].copy()
            row[i] = np.inf
            order = np.lexsort((np.arange(n), row))[:k]
            assert idx[i].tolist() == order.tolist(), f"row {i}"
            assert np.array_equal(dist[i], row[order])

    def test_k_out_of_range(self):
        m = np.zeros((3, 3))
        with pytest.raises(ParameterError):
            partial_sort_topk(m, 3)
        with pytest.raises(ParameterError):
            partial_sort_topk(m, 0)

    def test_worker_independence(self):
        v = uniform_noise(700, seed=2).values
        d = pairwise_distances(v, EmbeddingSpec(2, 1))
        d1, i1 = partial_sort_topk(d, 5, workers=1)
        d2, i2 = partial_sort_topk(d, 5, workers=4)
        assert np.array_equal(i1, i2)
        assert np.array_equal(d1, d2)


class TestNormalizeToWeights:
    def test_direct_formula(self):
        w = normalize_to_weights(np.array([[1.0, 4.0, 9.0]]))
        assert np.allclose(w[0], WEIGHTS_1_4_9, atol=1e-12)

    def test_equal_distances_uniform(self):
        w = normalize_to_weights(np.array([[2.0, 2.0, 2.0]]))
        assert np.allclose(w[0], [1 / 3] * 3, atol=1e-15)

    def test_zero_dmin_uses_smallest_positive(self):
        w = normalize_to_weights(np.array([[0.0, 0.0, 4.0]]))
        assert np.allclose(w[0], WEIGHTS_0_0_4, atol=1e-12)

    def test_all_zero_row_uniform(self):
        w = normalize_to_weights(np.zeros((2, 4)))
        assert np.allclose(w, 0.25, atol=1e-15)

    def test_rejects_descending_rows(self):
        with pytest.raises(ParameterError):
            normalize_to_weights(np.array([[2.0, 1.0]]))

    @given(seed=st.integers(0, 10_000), k=st.integers(1, 21))
    @settings(max_examples=50, deadline=None)
    def test_row_invariants(self, seed, k):
        rng = np.random.default_rng(seed)
        sq = np.sort(rng.random((5, k)) * 10, axis=1)
        w = normalize_to_weights(sq)
        assert np.allclose(w.sum(axis=1), 1.0, atol=1e-12)
        assert np.all(np.diff(w, axis=1) <= 1e-15)
        assert np.all(w[:, 0] >= 1.0 / k)
        assert np.all(w > 0.0)


class TestBuildKnnTable:
    def test_matches_oracle_on_logistic_series(self):
        from crossmap import logistic_map

        v = logistic_map(200, seed=4, r=3.9).values
        spec = EmbeddingSpec(2, 1)
        fast = build_knn_table(v, spec, k=3)
        slow = oracle_knn(v, spec, k=3)
        assert np.array_equal(fast.indices, slow.indices)
        assert np.max(np.abs(fast.weights - slow.weights)) <= 1e-6

    def test_constant_series_degenerate_rule(self):
        table = build_knn_table(np.full(9, 1.5), EmbeddingSpec(1, 1), k=3)
        assert np.allclose(table.weights, 1 / 3, atol=1e-15)
        assert table.indices[0].tolist() == [1, 2, 3]
        assert table.indices[4].tolist() == [0, 1, 2]

    def test_minimum_size_shape(self):
        spec = EmbeddingSpec(3, 1)
        n = spec.E + 3
        table = build_knn_table(np.arange(n + spec.span, dtype=float), spec)
        assert table.n == n
        assert table.k == spec.E + 1

    def test_default_k_is_dimension_plus_one(self):
        table = build_knn_table(uniform_noise(50, seed=0).values, EmbeddingSpec(4, 1))
        assert table.k == 5

    def test_scale_covariance(self):
        v = uniform_noise(150, seed=12).values
        spec = EmbeddingSpec(3, 1)
        base = build_knn_table(v, spec)
        scaled = build_knn_table(4.0 * v, spec)
        assert np.array_equal(base.indices, scaled.indices)
        assert np.max(np.abs(base.weights - scaled.weights)) <= 1e-6
        d = pairwise_distances(v, spec).values
        d_scaled = pairwise_distances(4.0 * v, spec).values
        assert np.allclose(d_scaled, 16.0 * d, rtol=1e-12)

    def test_worker_independence(self):
        v = uniform_noise(800, seed=3).values
        a = build_knn_table(v, EmbeddingSpec(6, 1), workers=1)
        b = build_knn_table(v, EmbeddingSpec(6, 1), workers=4)
        assert np.array_equal(a.indices, b.indices)
        assert np.max(np.abs(a.weights - b.weights)) <= 1e-9

    def test_too_short_propagates(self):
        spec = EmbeddingSpec(3, 1)
        # E+1 valid points: one fewer than neighbor search needs
        with pytest.raises(SeriesTooShortError):
            build_knn_table(np.arange(spec.span + spec.E + 1, dtype=float), spec)
        with pytest.raises(SeriesTooShortError):
            oracle_knn(np.arange(spec.span + spec.E + 1, dtype=float), spec)


class TestNeighborTable:
    def test_rejects_self_neighbor(self):
        with pytest.raises(ParameterError, match="own neighbor"):
            NeighborTable(np.array([[0, 1], [0, 2], [0, 1]]),
                          np.array([[0.6, 0.4]] * 3), EmbeddingSpec(1, 1))

    def test_rejects_bad_weight_rows(self):
        idx = np.array([[1, 2], [0, 2], [0, 1]])
        with pytest.raises(ParameterError, match="sum"):
            NeighborTable(idx, np.array([[0.6, 0.3]] * 3), EmbeddingSpec(1, 1))
        with pytest.raises(ParameterError, match="non-increasing"):
            NeighborTable(idx, np.array([[0.4, 0.6]] * 3), EmbeddingSpec(1, 1))

    def test_rejects_duplicate_neighbors(self):
        with pytest.raises(ParameterError, match="distinct"):
            NeighborTable(np.array([[1, 1], [0, 2], [0, 1]]),
                          np.array([[0.6, 0.4]] * 3), EmbeddingSpec(1, 1))
