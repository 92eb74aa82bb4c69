import numpy as np
import pytest

from fraudsim.mlcore import FeatureMatrix, accuracy, standardize, stratified_split


def matrix(values, labels=None, names=None):
    values = np.atleast_2d(np.asarray(values, dtype=float))
    names = names or [f"f{i}" for i in range(values.shape[1])]
    return FeatureMatrix(values=values, col_names=names, labels=labels)


class TestStandardize:
    def test_hand_computed_column(self):
        # population std of [1,2,3] is sqrt(2/3); (1-2)/sqrt(2/3) = -1.2247...
        out, mean, scale = standardize(matrix([[1.0], [2.0], [3.0]]))
        assert out.values[:, 0] == pytest.approx([-1.2247, 0.0, 1.2247], abs=1e-3)
        assert mean[0] == pytest.approx(2.0)
        assert scale[0] == pytest.approx(np.sqrt(2.0 / 3.0))

    def test_constant_column_centered_unscaled(self):
        out, _, scale = standardize(matrix([[5.0], [5.0], [5.0]]))
        assert np.allclose(out.values, 0.0)
        assert scale[0] == 1.0

    def test_idempotent_on_standardized_input(self):
        rng = np.random.default_rng(3)
        X = matrix(rng.normal(size=(50, 4)))
        once, _, _ = standardize(X)
        twice, _, _ = standardize(once)
        assert np.allclose(once.values, twice.values, atol=1e-9)

    def test_single_row_rejected(self):
        with pytest.raises(ValueError):
            standardize(matrix([[1.0, 2.0]]))

    def test_columns_have_zero_mean_unit_std(self):
        rng = np.random.default_rng(9)
        out, _, _ = standardize(matrix(rng.uniform(0, 100, size=(40, 6))))
        assert np.all(np.abs(out.values.mean(axis=0)) < 1e-9)
        assert np.allclose(out.values.std(axis=0), 1.0, atol=1e-9)


class TestStratifiedSplit:
    def cohort_sized(self):
        rng = np.random.default_rng(0)
        labels = np.array([0] * 16 + [1] * 17)
        return matrix(rng.normal(size=(33, 3)), labels=labels)

    def test_paper_cohort_sizes(self):
        train, test = stratified_split(self.cohort_sized(), ratio=0.7, seed=0)
        assert train.n in (22, 23)
        assert test.n in (10, 11)
        assert train.n + test.n == 33

    def test_partition_disjoint_and_complete(self):
        X = self.cohort_sized()
        X.row_ids = [f"r{i}" for i in range(33)]
        train, test = stratified_split(X, ratio=0.7, seed=5)
        assert set(train.row_ids) | set(test.row_ids) == set(X.row_ids)
        assert set(train.row_ids) & set(test.row_ids) == set()

    def test_ratio_one_rejected(self):
        with pytest.raises(ValueError):
            stratified_split(self.cohort_sized(), ratio=1.0, seed=0)

    def test_singleton_class_rejected(self):
        X = matrix(np.zeros((3, 2)), labels=np.array([0, 0, 1]))
        with pytest.raises(ValueError):
            stratified_split(X, ratio=0.7, seed=0)

    def test_same_seed_identical(self):
        X = self.cohort_sized()
        X.row_ids = [f"r{i}" for i in range(33)]
        a_train, _ = stratified_split(X, seed=3)
        b_train, _ = stratified_split(X, seed=3)
        assert a_train.row_ids == b_train.row_ids

    def test_every_class_on_both_sides(self):
        X = matrix(np.zeros((4, 1)), labels=np.array([0, 0, 1, 1]))
        train, test = stratified_split(X, ratio=0.7, seed=1)
        assert set(train.labels) == {0, 1}
        assert set(test.labels) == {0, 1}


class _Echo:
    def __init__(self, mapping):
        self.mapping = mapping

    def predict(self, X):
        return np.array([self.mapping[tuple(row)] for row in X])


class TestAccuracy:
    def test_echo_classifier_scores_one(self):
        X = matrix([[0.0], [1.0]], labels=np.array([0, 1]))
        clf = _Echo({(0.0,): 0, (1.0,): 1})
        assert accuracy(clf, X) == 1.0

    def test_constant_classifier_on_balanced_test(self):
        X = matrix([[0.0], [1.0], [2.0], [3.0]], labels=np.array([0, 0, 1, 1]))

        class Constant:
            def predict(self, values):
                return np.zeros(len(values), dtype=int)

        assert accuracy(Constant(), X) == 0.5

    def test_empty_test_rejected(self):
        X = matrix(np.zeros((0, 1)).reshape(0, 1), labels=np.array([], dtype=int))
        with pytest.raises(ValueError):
            accuracy(_Echo({}), X)


class TestFeatureMatrixCsv:
    def test_roundtrip_bit_identical(self, tmp_path):
        rng = np.random.default_rng(11)
        X = matrix(rng.normal(size=(12, 5)) * 1e3, labels=rng.integers(0, 2, size=12))
        X.row_ids = [f"id{i}" for i in range(12)]
        path = tmp_path / "m.csv"
        X.write_csv(path)
        Y = FeatureMatrix.read_csv(path)
        assert Y.equals(X)
        assert Y.row_ids == X.row_ids

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            matrix([[np.nan, 1.0]])

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            matrix([[1.0, 2.0]], names=["a", "a"])
