"""
Tests for threshold objectives, the Armijo solver and the MQE search.
"""

import unittest

import numpy as np

from src.discrim import binary_condition, ternary_condition
from src.errors import DomainError
from src.gaussian_stats import ClassPairModel
from src.quant_core import QuantKind, QuantScheme, quantization_error
from src.threshold_opt import (
    MeanObjective,
    SolverConfig,
    binary_gradient,
    binary_objective,
    default_starts,
    mqe_search,
    solve_mqe_threshold,
    solve_threshold,
    ternary_gradient,
    ternary_objective,
)


MODEL = ClassPairModel.standardized(0.8)


class TestObjectives(unittest.TestCase):
    """Tests for g(tau) and g'(tau)."""

    def test_objective_is_negated_condition(self):
        for tau in (-0.7, -0.3, 0.0, 0.25, 0.6, 1.4):
            self.assertEqual(binary_objective(MODEL, tau), -binary_condition(MODEL, tau))
            if tau >= 0:
                self.assertEqual(ternary_objective(MODEL, tau), -ternary_condition(MODEL, tau))

    def test_reference_values(self):
        self.assertAlmostEqual(binary_objective(MODEL, 0.0), -0.0177, delta=5e-4)
        self.assertAlmostEqual(ternary_objective(MODEL, 0.0), -0.0126, delta=5e-4)
        self.assertAlmostEqual(ternary_objective(MODEL, 0.6), 0.0129, delta=5e-4)
        self.assertAlmostEqual(binary_gradient(MODEL, 0.0), -0.007855, delta=5e-5)

    def test_binary_gradient_finite_difference(self):
        rng = np.random.default_rng(20)
        h = 1e-6
        for mu, tau in zip(rng.uniform(0.05, 0.95, 1000), rng.uniform(-2.0, 2.0, 1000)):
            model = ClassPairModel.standardized(mu)
            numeric = (binary_objective(model, tau + h) - binary_objective(model, tau - h)) / (2 * h)
            self.assertAlmostEqual(binary_gradient(model, tau), numeric, delta=1e-6)

    def test_ternary_gradient_finite_difference(self):
        rng = np.random.default_rng(21)
        h = 1e-6
        for mu, tau in zip(rng.uniform(0.05, 0.95, 1000), rng.uniform(0.01, 2.0, 1000)):
            model = ClassPairModel.standardized(mu)
            numeric = (ternary_objective(model, tau + h) - ternary_objective(model, tau - h)) / (2 * h)
            self.assertAlmostEqual(ternary_gradient(model, tau), numeric, delta=1e-6)

    def test_radical_identity(self):
        rng = np.random.default_rng(22)
        mu = rng.uniform(0.01, 0.99, 500)
        beta = rng.uniform(0.0, 1.0, 500)
        np.testing.assert_allclose(
            np.sqrt(mu ** 4 + 8 * mu ** 2 * beta), mu * np.sqrt(mu ** 2 + 8 * beta), rtol=1e-12
        )

    def test_mean_objective(self):
        other = ClassPairModel.standardized(0.5)
        objective = MeanObjective([MODEL, other], QuantKind.BINARY)
        value, slope = objective(0.2)
        self.assertAlmostEqual(value, 0.5 * (binary_objective(MODEL, 0.2) + binary_objective(other, 0.2)), places=14)
        self.assertAlmostEqual(slope, 0.5 * (binary_gradient(MODEL, 0.2) + binary_gradient(other, 0.2)), places=14)
        self.assertEqual(len(objective), 2)
        self.assertAlmostEqual(objective.mean_sigma, 0.5 * (0.6 + np.sqrt(0.75)), places=14)
        with self.assertRaises(DomainError):
            MeanObjective([], QuantKind.TERNARY)


class TestSolverConfig(unittest.TestCase):
    """Tests for SolverConfig validation."""

    def test_defaults(self):
        cfg = SolverConfig()
        self.assertEqual(cfg.armijo_c, 1e-3)
        self.assertEqual(cfg.grad_tol, 1e-12)
        self.assertEqual(cfg.max_iters, 10_000)

    def test_invalid_values(self):
        for kwargs in ({"armijo_c": 0.0}, {"grad_tol": -1.0}, {"max_iters": 0}, {"step_shrink": 1.0}, {"stall_grad_tol": 1e-13}):
            with self.assertRaises(DomainError):
                SolverConfig(**kwargs)

    def test_default_starts(self):
        binary = MeanObjective([MODEL], QuantKind.BINARY)
        ternary = MeanObjective([MODEL], QuantKind.TERNARY)
        for objective, tau0, expected in (
            (binary, 0.5, [0.5, 0.8]),
            (ternary, 1.0, [1.0, 0.3]),
            (ternary, -2.0, [0.0, 0.3]),
        ):
            starts = default_starts(objective, SolverConfig(tau0=tau0))
            self.assertEqual(len(starts), 2)
            for got, want in zip(starts, expected):
                self.assertAlmostEqual(got, want, places=12)


class TestSolveThreshold(unittest.TestCase):
    """Tests for solve_threshold."""

    @staticmethod
    def grid_minimum(objective, start, stop):
        taus = np.round(np.arange(start, stop + 1e-9, 0.001), 6)
        return min(objective(MODEL, t) for t in taus)

    def test_binary_enhancing_threshold(self):
        result = solve_threshold(MODEL, QuantKind.BINARY, SolverConfig(tau0=0.5))
        self.assertTrue(-0.2 <= result.tau_star <= 0.2, result.tau_star)
        self.assertLess(result.objective_value, 0.0)
        self.assertTrue(result.condition_satisfied)
        self.assertAlmostEqual(result.tau_star, 0.008, delta=0.005)
        self.assertAlmostEqual(result.objective_value, -0.017734, delta=5e-6)
        best = self.grid_minimum(binary_objective, -1.0, 1.0)
        self.assertLessEqual(result.objective_value, best + 1e-9)
        self.assertLess(abs(result.gradient), 1e-6)

    def test_ternary_enhancing_threshold(self):
        result = solve_threshold(MODEL, QuantKind.TERNARY, SolverConfig(tau0=1.0))
        self.assertTrue(0.0 <= result.tau_star <= 0.5, result.tau_star)
        self.assertLess(result.objective_value, 0.0)
        self.assertAlmostEqual(result.tau_star, 0.2, delta=0.01)
        self.assertAlmostEqual(result.objective_value, -0.027589, delta=5e-6)
        best = self.grid_minimum(ternary_objective, 0.0, 1.0)
        self.assertLessEqual(result.objective_value, best + 1e-9)

    def test_trace_strictly_decreases(self):
        for kind, tau0 in ((QuantKind.BINARY, 0.5), (QuantKind.TERNARY, 1.0), (QuantKind.TERNARY, 0.0)):
            result = solve_threshold(MODEL, kind, SolverConfig(tau0=tau0))
            self.assertGreater(len(result.trace), 1)
            self.assertTrue(np.all(np.diff(result.trace) < 0.0), kind)
            self.assertEqual(result.trace[-1], result.objective_value)

    def test_rounding_stall_counts_as_converged(self):
        cfg = SolverConfig(tau0=0.5)
        for kind in (QuantKind.BINARY, QuantKind.TERNARY):
            result = solve_threshold(MODEL, kind, cfg)
            self.assertTrue(result.converged, kind)
            self.assertLessEqual(abs(result.gradient), cfg.stall_grad_tol)

    def test_tight_stall_tolerance_reports_not_converged(self):
        cfg = SolverConfig(tau0=0.5, grad_tol=1e-15, stall_grad_tol=1e-15)
        result = solve_threshold(MODEL, QuantKind.BINARY, cfg)
        self.assertFalse(result.converged)
        self.assertAlmostEqual(result.objective_value, -0.017734, delta=5e-6)

    def test_no_enhancement_for_weak_separation(self):
        model = ClassPairModel.standardized(0.3)
        for kind in (QuantKind.BINARY, QuantKind.TERNARY):
            for tau0 in (-0.5, 0.0, 0.5, 1.5):
                result = solve_threshold(model, kind, SolverConfig(tau0=tau0))
                self.assertFalse(result.condition_satisfied)

    def test_ternary_stays_feasible(self):
        result = solve_threshold(MODEL, QuantKind.TERNARY, starts=[-1.0])
        self.assertEqual(result.start, -1.0)
        self.assertGreaterEqual(result.tau_star, 0.0)
        for tau0 in (0.0, 0.05, 2.0):
            self.assertGreaterEqual(solve_threshold(MODEL, QuantKind.TERNARY, SolverConfig(tau0=tau0)).tau_star, 0.0)

    def test_identical_models_match_single(self):
        single = solve_threshold(MODEL, QuantKind.BINARY)
        double = solve_threshold([MODEL, MODEL], QuantKind.BINARY)
        self.assertAlmostEqual(single.tau_star, double.tau_star, places=12)
        self.assertAlmostEqual(single.objective_value, double.objective_value, places=14)

    def test_empty_starts(self):
        with self.assertRaises(DomainError):
            solve_threshold(MODEL, QuantKind.BINARY, starts=[])

    def test_to_dict(self):
        payload = solve_threshold(MODEL, "binary").to_dict()
        self.assertEqual(payload["kind"], "binary")
        self.assertNotIn("trace", payload)
        self.assertTrue(payload["condition_satisfied"])


class TestMqe(unittest.TestCase):
    """Tests for the exact MQE threshold search."""

    def test_perfect_ternary_reconstruction(self):
        tau, error = mqe_search([-1.0, 1.0], QuantKind.TERNARY)
        self.assertLess(tau, 1.0)
        self.assertEqual(error, 0.0)

    def test_equal_samples(self):
        with self.assertLogs("src.threshold_opt.mqe", level="WARNING"):
            tau, error = mqe_search([0.1, 0.1], QuantKind.BINARY, scaled=True)
        self.assertLess(tau, 0.1)
        self.assertAlmostEqual(error, 0.0, places=15)

    def test_matches_dense_grid(self):
        rng = np.random.default_rng(30)
        for _ in range(25):
            values = rng.normal(rng.uniform(-1, 1), rng.uniform(0.2, 2.0), size=int(rng.integers(5, 60)))
            for kind in (QuantKind.BINARY, QuantKind.TERNARY):
                for scaled in (False, True):
                    tau, error = mqe_search(values, kind, scaled)
                    scheme = QuantScheme(kind, tau)
                    self.assertAlmostEqual(quantization_error(values, scheme, scaled), error, delta=1e-12)
                    if kind is QuantKind.BINARY:
                        grid = np.linspace(values.min() - 1.0, values.max() + 1.0, 501)
                    else:
                        grid = np.linspace(0.0, np.abs(values).max() + 1.0, 501)
                    best = min(quantization_error(values, QuantScheme(kind, t), scaled) for t in grid)
                    self.assertLessEqual(error, best + 1e-12)

    def test_gaussian_scaled_ternary(self):
        values = np.random.default_rng(31).standard_normal(100_000)
        tau = solve_mqe_threshold(values, QuantKind.TERNARY, scaled=True)
        self.assertAlmostEqual(tau, 0.612, delta=0.06)

    def test_invalid_samples(self):
        with self.assertRaises(DomainError):
            mqe_search([1.0], QuantKind.BINARY)
        with self.assertRaises(DomainError):
            mqe_search([1.0, np.nan], QuantKind.TERNARY)


if __name__ == "__main__":
    unittest.main()
