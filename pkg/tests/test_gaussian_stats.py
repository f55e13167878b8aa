"""
Tests for the normal primitives and two-class standardization.
"""

import math
import unittest

import numpy as np

from src.errors import DegenerateClassesError, DomainError
from src.gaussian_stats import (
    ClassPairModel,
    RawClassParams,
    fit_dimension_models,
    standardize_dataset,
    standardize_params,
    std_normal_cdf,
    std_normal_pdf,
)
from src.synth_data import LabeledDataset, SynthSpec, generate


class TestNormalPrimitives(unittest.TestCase):
    """Tests for std_normal_cdf and std_normal_pdf."""

    def test_cdf_values(self):
        self.assertEqual(std_normal_cdf(0.0), 0.5)
        self.assertAlmostEqual(std_normal_cdf(1.3333333), 0.908789, delta=1e-5)
        self.assertAlmostEqual(std_normal_cdf(-1.3333333), 0.091211, delta=1e-5)

    def test_cdf_reflection(self):
        for x in np.linspace(-8, 8, 33):
            self.assertAlmostEqual(std_normal_cdf(-x), 1.0 - std_normal_cdf(x), delta=1e-15)

    def test_pdf_values(self):
        self.assertAlmostEqual(std_normal_pdf(0.0), 0.3989423, delta=1e-6)
        self.assertAlmostEqual(std_normal_pdf(1.0), 0.2419707, delta=1e-6)
        self.assertEqual(std_normal_pdf(-1.0), std_normal_pdf(1.0))

    def test_non_finite_input(self):
        for bad in (math.nan, math.inf, -math.inf):
            with self.assertRaises(DomainError):
                std_normal_cdf(bad)
            with self.assertRaises(DomainError):
                std_normal_pdf(bad)

    def test_array_input(self):
        values = std_normal_cdf(np.array([-1.0, 0.0, 1.0]))
        self.assertIsInstance(values, np.ndarray)
        self.assertEqual(values.shape, (3,))

    def test_cdf_monotone(self):
        rng = np.random.default_rng(3)
        pairs = np.sort(rng.uniform(-10, 10, size=(1000, 2)), axis=1)
        low = std_normal_cdf(pairs[:, 0])
        high = std_normal_cdf(pairs[:, 1])
        self.assertTrue(np.all(low <= high))

    def test_cdf_derivative_is_pdf(self):
        h = 1e-5
        x = np.arange(-4.0, 4.0 + 1e-9, 0.01)
        slope = (std_normal_cdf(x + h) - std_normal_cdf(x - h)) / (2 * h)
        np.testing.assert_allclose(slope, std_normal_pdf(x), atol=1e-6)


class TestStandardizeParams(unittest.TestCase):
    """Tests for standardize_params and ClassPairModel."""

    def test_shifted_classes(self):
        model = standardize_params(RawClassParams(2.0, 0.0, 1.0))
        self.assertAlmostEqual(model.mu, 1.0 / math.sqrt(2.0), places=12)
        self.assertAlmostEqual(model.sigma2, 0.5, places=12)
        self.assertFalse(model.swapped)

    def test_negligible_variance(self):
        model = standardize_params(RawClassParams(1.0, -1.0, 1e-12))
        self.assertLess(model.mu, 1.0)
        self.assertGreater(model.mu, 0.999999)
        self.assertLess(model.sigma2, 1e-11)

    def test_fixed_point(self):
        model = standardize_params(RawClassParams(0.8, -0.8, 0.36))
        self.assertAlmostEqual(model.mu, 0.8, places=12)
        self.assertAlmostEqual(model.sigma2, 0.36, places=12)

    def test_swapped_roles(self):
        model = standardize_params(RawClassParams(0.0, 2.0, 1.0))
        self.assertTrue(model.swapped)
        self.assertAlmostEqual(model.mu, 1.0 / math.sqrt(2.0), places=12)

    def test_degenerate_inputs(self):
        with self.assertRaises(DegenerateClassesError):
            RawClassParams(1.0, 1.0, 1.0)
        with self.assertRaises(DegenerateClassesError):
            RawClassParams(1.0, 0.0, 0.0)
        with self.assertRaises(DomainError):
            RawClassParams(math.nan, 0.0, 1.0)

    def test_unit_circle_for_random_inputs(self):
        rng = np.random.default_rng(11)
        for mu1, mu2, sigma2 in zip(rng.uniform(-5, 5, 10_000), rng.uniform(-5, 5, 10_000), rng.uniform(0.01, 10, 10_000)):
            if mu1 == mu2:
                continue
            model = standardize_params(RawClassParams(mu1, mu2, sigma2))
            self.assertAlmostEqual(model.mu ** 2 + model.sigma2, 1.0, delta=1e-12)

    def test_model_validation(self):
        with self.assertRaises(DomainError):
            ClassPairModel(mu=0.0, sigma=1.0)
        with self.assertRaises(DomainError):
            ClassPairModel(mu=1.0, sigma=0.1)
        with self.assertRaises(DegenerateClassesError):
            ClassPairModel(mu=0.5, sigma=0.0)
        with self.assertRaises(DomainError):
            ClassPairModel.standardized(1.5)

    def test_standardized_constructor(self):
        model = ClassPairModel.standardized(0.8)
        self.assertAlmostEqual(model.sigma, 0.6, places=12)
        self.assertAlmostEqual(model.mu ** 2 + model.sigma ** 2, 1.0, delta=1e-12)


class TestStandardizeDataset(unittest.TestCase):
    """Tests for dataset-level standardization."""

    def test_two_samples(self):
        data = LabeledDataset(np.array([[0.0], [2.0]]), np.array([0, 1]))
        out = standardize_dataset(data)
        np.testing.assert_allclose(out.features[:, 0], [-1.0, 1.0])

    def test_zero_mean_unit_variance(self):
        rng = np.random.default_rng(5)
        features = rng.normal(3.0, 2.5, size=(500, 4)) * np.array([1.0, 10.0, 0.1, 7.0])
        out = standardize_dataset(LabeledDataset(features, rng.integers(0, 2, 500)))
        np.testing.assert_allclose(out.features.mean(axis=0), 0.0, atol=1e-9)
        np.testing.assert_allclose(out.features.var(axis=0), 1.0, atol=1e-9)

    def test_idempotent(self):
        rng = np.random.default_rng(6)
        data = LabeledDataset(rng.normal(size=(200, 3)) * 4 + 1, rng.integers(0, 2, 200))
        once = standardize_dataset(data)
        twice = standardize_dataset(once)
        np.testing.assert_allclose(twice.features, once.features, atol=1e-9)

    def test_constant_dimension_warns(self):
        features = np.column_stack([np.arange(10.0), np.full(10, 4.0)])
        data = LabeledDataset(features, np.repeat([0, 1], 5))
        with self.assertLogs("src.gaussian_stats.standardize", level="WARNING") as logs:
            out = standardize_dataset(data)
        self.assertTrue(np.all(out.features[:, 1] == 0.0))
        self.assertIn("constant", logs.output[0])

    def test_matches_standardize_params(self):
        rng = np.random.default_rng(8)
        n = 100_000
        features = np.concatenate([rng.normal(2.0, 1.0, n), rng.normal(0.0, 1.0, n)])
        data = LabeledDataset(features, np.repeat([0, 1], n))
        out = standardize_dataset(data)
        self.assertAlmostEqual(out.class_features(0).mean(), 1.0 / math.sqrt(2.0), delta=0.01)
        self.assertAlmostEqual(out.class_features(1).mean(), -1.0 / math.sqrt(2.0), delta=0.01)


class TestFitDimensionModels(unittest.TestCase):
    """Tests for per-dimension model fitting."""

    def test_recovers_synthetic_means(self):
        data = generate(SynthSpec(dims=3, lam=1.0, mu1=0.8, samples_per_class=10_000, seed=4))
        models = fit_dimension_models(data)
        self.assertEqual(len(models), 3)
        for model, expected in zip(models, [0.8, 0.8 * math.exp(-1), 0.8 * math.exp(-2)]):
            self.assertAlmostEqual(model.mu, expected, delta=0.02)

    def test_skips_dimension_without_separation(self):
        features = np.array([[1.0, 5.0], [2.0, 6.0], [-1.0, 5.0], [-2.0, 6.0]])
        data = LabeledDataset(features, np.array([0, 0, 1, 1]))
        with self.assertLogs("src.gaussian_stats.standardize", level="WARNING"):
            models = fit_dimension_models(data)
        self.assertEqual(len(models), 1)

    def test_requires_two_classes(self):
        data = LabeledDataset(np.arange(6.0).reshape(-1, 1), np.array([0, 0, 1, 1, 2, 2]))
        with self.assertRaises(DegenerateClassesError):
            fit_dimension_models(data)


if __name__ == "__main__":
    unittest.main()
