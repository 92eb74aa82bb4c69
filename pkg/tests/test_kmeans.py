import itertools

import numpy as np
import pytest

from fraudsim.mlcore import elbow_select, kmeans_fit


def two_blobs(n_per=30, sep=8.0, seed=0, d=2):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n_per, d))
    b = rng.normal(size=(n_per, d)) + sep
    return np.vstack([a, b]), np.zeros(d), np.full(d, sep)


def exhaustive_two_partition_inertia(points):
    """Oracle: minimum inertia over every 2-partition of the points."""
    n = len(points)
    best = np.inf
    for mask_bits in range(1, 2 ** (n - 1)):  # fix point 0 in cluster A to halve the space
        mask = np.array([(mask_bits >> i) & 1 for i in range(n)], dtype=bool)
        mask = np.concatenate([[True], mask[: n - 1]])
        a, b = points[mask], points[~mask]
        if len(a) == 0 or len(b) == 0:
            continue
        inertia = ((a - a.mean(axis=0)) ** 2).sum() + ((b - b.mean(axis=0)) ** 2).sum()
        best = min(best, float(inertia))
    return best


class TestKMeansFit:
    def test_k1_centroid_is_mean_inertia_is_total_ss(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(25, 3)) * 4
        model = kmeans_fit(X, k=1, seed=0)
        assert np.allclose(model.centroids[0], X.mean(axis=0), atol=1e-9)
        assert model.inertia == pytest.approx(((X - X.mean(axis=0)) ** 2).sum(), rel=1e-9)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    def test_matches_exhaustive_partition_oracle(self, seed):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(8, 2)) * 3
        model = kmeans_fit(X, k=2, seed=7)
        oracle = exhaustive_two_partition_inertia(X)
        assert model.inertia == pytest.approx(oracle, rel=1e-9)

    def test_separated_blobs_recover_means(self):
        X, mean_a, mean_b = two_blobs(seed=0)
        model = kmeans_fit(X, k=2, seed=0)
        dists = [
            min(np.linalg.norm(c - mean_a), np.linalg.norm(c - mean_b))
            for c in model.centroids
        ]
        assert max(dists) < 0.5

    def test_inertia_history_nonincreasing(self):
        X, _, _ = two_blobs(seed=2)
        model = kmeans_fit(X, k=3, seed=1, n_init=1)
        hist = model.inertia_history
        assert all(hist[i] >= hist[i + 1] - 1e-9 for i in range(len(hist) - 1))

    def test_final_assignment_is_fixed_point(self):
        X, _, _ = two_blobs(seed=3)
        model = kmeans_fit(X, k=2, seed=5)
        assign = model.assign(X)
        new_centroids = np.vstack([X[assign == c].mean(axis=0) for c in range(2)])
        assert np.allclose(new_centroids, model.centroids, atol=1e-6)

    def test_k_exceeding_n_rejected(self):
        with pytest.raises(ValueError):
            kmeans_fit(np.zeros((3, 2)), k=4, seed=0)

    def test_duplicate_points_dont_crash(self):
        X = np.array([[1.0, 1.0]] * 6 + [[5.0, 5.0]] * 2)
        model = kmeans_fit(X, k=3, seed=0)
        assert np.all(np.isfinite(model.centroids))

    def test_deterministic_under_seed(self):
        X, _, _ = two_blobs(seed=4)
        a = kmeans_fit(X, k=4, seed=9)
        b = kmeans_fit(X, k=4, seed=9)
        assert np.array_equal(a.centroids, b.centroids)
        assert a.inertia == b.inertia


class TestElbowSelect:
    def test_two_blobs_choose_two(self):
        X, _, _ = two_blobs(n_per=40, sep=10.0, seed=0)
        chosen, curve = elbow_select(X, range(1, 7), seed=0)
        assert chosen == 2
        assert len(curve) == 6

    def test_uniform_cube_curve_nonincreasing(self):
        rng = np.random.default_rng(0)
        X = rng.uniform(size=(60, 3))
        _, curve = elbow_select(X, range(1, 9), seed=0)
        inertias = [v for _, v in curve]
        assert all(inertias[i] >= inertias[i + 1] - 1e-9 for i in range(len(inertias) - 1))

    def test_short_range_rejected(self):
        with pytest.raises(ValueError):
            elbow_select(np.zeros((10, 2)), range(1, 3), seed=0)

    def test_non_contiguous_range_rejected(self):
        with pytest.raises(ValueError):
            elbow_select(np.zeros((10, 2)), [1, 3, 5], seed=0)

    def test_synthetic_cohort_elbow_is_two(self, cohort_table):
        from fraudsim.mlcore import standardize

        std, _, _ = standardize(cohort_table)
        chosen, _ = elbow_select(std.values, range(1, 9), seed=42)
        assert chosen == 2
