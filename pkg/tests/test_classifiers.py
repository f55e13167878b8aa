"""
Tests for the KNN and linear SVM classifiers and the accuracy metric.
"""

import unittest

import numpy as np

from src.classifiers import (
    ClassifierChoice,
    KnnClassifier,
    KnnConfig,
    KnnMetric,
    SvmConfig,
    accuracy,
    knn_predict,
    svm_predict,
    svm_train,
    train_and_predict,
)
from src.errors import DegenerateClassesError, DomainError
from src.synth_data import LabeledDataset, SynthSpec, generate, split


class TestKnn(unittest.TestCase):
    """Tests for KnnClassifier."""

    def test_nearest_neighbour(self):
        train = LabeledDataset(np.array([[0.0], [10.0]]), np.array([0, 1]))
        np.testing.assert_array_equal(knn_predict(train, np.array([[1.0]]), KnnConfig(k=1)), [0])

    def test_exact_match_wins(self):
        rng = np.random.default_rng(0)
        train = LabeledDataset(rng.normal(size=(50, 3)), rng.integers(0, 3, 50))
        predicted = knn_predict(train, train.features, KnnConfig(k=1))
        np.testing.assert_array_equal(predicted, train.labels)

    def test_distance_tie_goes_to_lower_index(self):
        train = LabeledDataset(np.array([[1.0], [-1.0]]), np.array([1, 0]))
        np.testing.assert_array_equal(knn_predict(train, np.array([[0.0]]), KnnConfig(k=1)), [1])
        flipped = LabeledDataset(np.array([[-1.0], [1.0]]), np.array([0, 1]))
        np.testing.assert_array_equal(knn_predict(flipped, np.array([[0.0]]), KnnConfig(k=1)), [0])

    def test_vote_tie_goes_to_lower_label(self):
        train = LabeledDataset(np.array([[1.0], [2.0], [3.0], [4.0]]), np.array([5, 2, 5, 2]))
        np.testing.assert_array_equal(knn_predict(train, np.array([[0.0]]), KnnConfig(k=4)), [2])

    def test_hamming_cosine_equivalence(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            dims = int(rng.integers(3, 20))
            bits = rng.integers(0, 2, size=(40, dims)).astype(np.float64)
            labels = rng.integers(0, 2, 40)
            queries = rng.integers(0, 2, size=(15, dims)).astype(np.float64)
            signed = LabeledDataset(2.0 * bits - 1.0, labels)
            for k in (1, 3, 5):
                euclid = knn_predict(LabeledDataset(bits, labels), queries, KnnConfig(k=k))
                cosine = knn_predict(signed, 2.0 * queries - 1.0, KnnConfig(k=k, metric=KnnMetric.COSINE))
                np.testing.assert_array_equal(euclid, cosine)

    def test_permutation_invariant(self):
        rng = np.random.default_rng(2)
        features = rng.normal(size=(60, 4))
        labels = (features[:, 0] > 0).astype(int)
        queries = rng.normal(size=(30, 4))
        base = knn_predict(LabeledDataset(features, labels), queries, KnnConfig(k=3))
        order = rng.permutation(60)
        permuted = knn_predict(LabeledDataset(features[order], labels[order]), queries, KnnConfig(k=3))
        np.testing.assert_array_equal(base, permuted)

    def test_zero_norm_rows(self):
        train = LabeledDataset(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]), np.array([0, 1, 2]))
        classifier = KnnClassifier(KnnConfig(k=1, metric="cosine"))
        with self.assertLogs("src.classifiers.knn", level="WARNING"):
            classifier.fit(train)
        with self.assertLogs("src.classifiers.knn", level="WARNING"):
            predicted = classifier.predict(np.array([[0.0, 0.0], [2.0, 0.1]]))
        self.assertEqual(predicted[0], 0)
        self.assertEqual(predicted[1], 1)
        self.assertEqual(classifier.zero_norm_count, 2)

    def test_k_larger_than_training_set(self):
        train = LabeledDataset(np.array([[0.0], [1.0], [2.0]]), np.array([1, 1, 0]))
        with self.assertLogs("src.classifiers.knn", level="WARNING"):
            predicted = knn_predict(train, np.array([[5.0]]), KnnConfig(k=7))
        np.testing.assert_array_equal(predicted, [1])

    def test_chunked_prediction(self):
        rng = np.random.default_rng(3)
        train = LabeledDataset(rng.normal(size=(2000, 2)), rng.integers(0, 2, 2000))
        queries = rng.normal(size=(2500, 2))
        classifier = KnnClassifier(KnnConfig(k=3)).fit(train)
        whole = classifier.predict(queries)
        pieces = np.concatenate([classifier.predict(queries[:1000]), classifier.predict(queries[1000:])])
        np.testing.assert_array_equal(whole, pieces)

    def test_errors(self):
        with self.assertRaises(DomainError):
            KnnConfig(k=0)
        with self.assertRaises(DomainError):
            KnnClassifier().predict(np.zeros((1, 1)))
        train = LabeledDataset(np.zeros((2, 2)), np.array([0, 1]))
        with self.assertRaises(DomainError):
            knn_predict(train, np.zeros((1, 3)))


class TestSvm(unittest.TestCase):
    """Tests for the linear SVM."""

    def test_separable(self):
        features = np.concatenate([np.full(20, -1.0), np.full(20, 1.0)]).reshape(-1, 1)
        train = LabeledDataset(features, np.repeat([0, 1], 20))
        model = svm_train(train)
        self.assertEqual(accuracy(svm_predict(model, train.features), train.labels), 1.0)
        self.assertGreater(model.weights[0], 0.0)

    def test_deterministic(self):
        data = generate(SynthSpec(dims=5, samples_per_class=200, seed=1))
        first = svm_train(data, SvmConfig(seed=4))
        second = svm_train(data, SvmConfig(seed=4))
        np.testing.assert_array_equal(first.weights, second.weights)
        self.assertEqual(first.bias, second.bias)

    def test_contradictory_points(self):
        features = np.repeat([[0.5, -0.5]], 10, axis=0)
        train = LabeledDataset(features, np.repeat([0, 1], 5))
        predicted = svm_predict(svm_train(train), features)
        self.assertLessEqual(accuracy(predicted, train.labels), 0.5)

    def test_class_count_errors(self):
        with self.assertRaises(DegenerateClassesError):
            svm_train(LabeledDataset(np.zeros((4, 1)), np.zeros(4, dtype=int)))
        with self.assertRaises(DomainError):
            svm_train(LabeledDataset(np.arange(6.0), np.array([0, 0, 1, 1, 2, 2])))
        with self.assertRaises(DomainError):
            SvmConfig(regularization=0.0)

    def test_close_to_knn_on_easy_data(self):
        data = generate(SynthSpec(dims=100, lam=0.0, mu1=0.8, samples_per_class=500, seed=6))
        train, test = split(data, 0.8, seed=6)
        svm = accuracy(train_and_predict(ClassifierChoice.SVM, train, test.features), test.labels)
        knn = accuracy(train_and_predict(ClassifierChoice.KNN_EUCLID, train, test.features), test.labels)
        self.assertLessEqual(abs(svm - knn), 0.02)

    def test_choice_from_string(self):
        train = LabeledDataset(np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([0, 1]))
        predicted = train_and_predict("knn-cosine", train, np.array([[3.0, 0.5]]), k=1)
        np.testing.assert_array_equal(predicted, [0])

    def test_choice_for_metric(self):
        self.assertIs(ClassifierChoice.for_metric("cosine"), ClassifierChoice.KNN_COSINE)
        self.assertIs(ClassifierChoice.for_metric(KnnMetric.EUCLIDEAN), ClassifierChoice.KNN_EUCLID)


class TestAccuracy(unittest.TestCase):
    """Tests for accuracy."""

    def test_examples(self):
        self.assertEqual(accuracy([0, 1, 1], [0, 1, 1]), 1.0)
        self.assertEqual(accuracy([1, 0], [0, 1]), 0.0)
        self.assertEqual(accuracy([0, 1, 1, 0], [0, 1, 1, 1]), 0.75)

    def test_errors(self):
        with self.assertRaises(DomainError):
            accuracy([0, 1], [0])
        with self.assertRaises(DomainError):
            accuracy([], [])


if __name__ == "__main__":
    unittest.main()
