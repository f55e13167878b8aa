"""
Experiment orchestration for the command-line harness.

ExperimentRunner owns the run-wide settings (worker count, progress bars,
seed) and exposes one method per experiment. Work units (grid points,
repeats, class pairs) draw their randomness from substreams keyed by
(seed, unit index) and results are collected in unit order, so the output
does not depend on the number of workers.
"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..classifiers import ClassifierChoice, SvmConfig, accuracy, train_and_predict
from ..discrim import (
    condition,
    d_original,
    d_quantized,
    dataset_discrimination,
    empirical_discrimination,
    existence_threshold,
    Pairing,
)
from ..errors import DegenerateClassesError, DomainError, SaturationError
from ..gaussian_stats import ClassPairModel, fit_dimension_models, standardize_dataset
from ..quant_core import QuantKind, QuantScheme, quantization_error, quantize_vector
from ..schemas import table_columns
from ..synth_data import LabeledDataset, SynthSpec, generate, generate_multiclass, split, substream_seed
from ..threshold_opt import SolverConfig, SolverResult, solve_mqe_threshold, solve_threshold
from .results import SweepResult


logger = logging.getLogger(__name__)

# Top-level substream keys
_MC_UNIT = 0
_PAIR_SAMPLING_UNIT = 1


def tau_grid(tau_min: float, tau_max: float, step: float) -> np.ndarray:
    """Inclusive grid tau_min, tau_min + step, ... <= tau_max, rounded to 12 decimals."""
    if not step > 0.0:
        raise DomainError(f"grid step must be positive, got {step}")
    if tau_max < tau_min:
        raise DomainError(f"grid maximum {tau_max} is below minimum {tau_min}")
    count = int(math.floor((tau_max - tau_min) / step + 1e-9)) + 1
    return np.round(tau_min + step * np.arange(count), 12) + 0.0


def _kind_grid(kind: QuantKind, taus: Sequence[float]) -> np.ndarray:
    taus = np.asarray(taus, dtype=np.float64)
    if kind is QuantKind.TERNARY and np.any(taus < 0.0):
        logger.info("Dropping %d negative threshold(s) from the ternary grid", int(np.sum(taus < 0.0)))
        taus = taus[taus >= 0.0]
    if taus.size == 0:
        raise DomainError("threshold grid is empty")
    return taus


def quantize_dataset(data: LabeledDataset, scheme: QuantScheme) -> LabeledDataset:
    return data.with_features(quantize_vector(data.features, scheme).astype(np.float64))


@dataclass(frozen=True)
class ClassifyOptions:
    """Classifier settings shared by the classification experiments."""

    classifier: ClassifierChoice = ClassifierChoice.KNN_EUCLID
    k: int = 5
    train_fraction: float = 0.8
    svm: SvmConfig = SvmConfig()

    def __post_init__(self) -> None:
        object.__setattr__(self, "classifier", ClassifierChoice(self.classifier))
        if int(self.k) < 1:
            raise DomainError(f"k must be >= 1, got {self.k}")
        if not 0.0 < self.train_fraction < 1.0:
            raise DomainError(f"train_fraction must lie in (0, 1), got {self.train_fraction}")

    def predict(self, train: LabeledDataset, test: LabeledDataset, seed: int) -> np.ndarray:
        svm_cfg = SvmConfig(self.svm.regularization, self.svm.epochs, seed)
        return train_and_predict(self.classifier, train, test.features, self.k, svm_cfg)

    def score(self, train: LabeledDataset, test: LabeledDataset, seed: int) -> float:
        return accuracy(self.predict(train, test, seed), test.labels)


def _safe(fn: Callable[[], float]) -> float:
    try:
        return float(fn())
    except SaturationError:
        return math.nan


class ExperimentRunner:
    """
    Runs the harness experiments.

    Args:
        seed: Run seed; every work unit derives its own substream from it
        workers: Thread count for work units (1 runs inline)
        progress: Show tqdm progress bars on stderr
    """

    def __init__(self, seed: int = 0, workers: int = 1, progress: bool = False):
        if int(workers) < 1:
            raise DomainError(f"workers must be >= 1, got {workers}")
        self.seed = int(seed)
        self.workers = int(workers)
        self.progress = progress

    def _map(self, fn: Callable[[Any], Any], units: Sequence[Any], desc: str) -> List[Any]:
        """Apply fn to every unit, in order, optionally on a thread pool."""
        bar = tqdm(total=len(units), desc=desc, disable=not self.progress, leave=False)
        try:
            if self.workers == 1:
                results = []
                for unit in units:
                    results.append(fn(unit))
                    bar.update(1)
                return results
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = []
                for result in pool.map(fn, units):
                    results.append(result)
                    bar.update(1)
                return results
        finally:
            bar.close()

    # ------------------------------------------------------------------
    # Closed-form and Monte-Carlo sweeps
    # ------------------------------------------------------------------

    def theory_sweep(self, mu: float, taus: Sequence[float], kind: QuantKind) -> SweepResult:
        """Condition value and closed-form discrimination at every grid threshold."""
        kind = QuantKind(kind)
        model = ClassPairModel.standardized(mu)
        grid = _kind_grid(kind, taus)
        result = SweepResult("theory", table_columns("theory"), metadata={"mu": mu, "kind": kind.value})
        base = d_original(model)

        def point(tau: float) -> Dict[str, float]:
            return {
                "tau": float(tau),
                "condition_value": float(condition(model, kind, tau)),
                "d_original": base,
                "d_quantized": _safe(lambda: d_quantized(model, QuantScheme(kind, tau))),
            }

        for row in self._map(point, list(grid), "theory"):
            result.add_row(**row)
        positive = result.column("condition_value") > 0.0
        logger.info("theory %s mu=%.4g: %d of %d grid points enhance", kind.value, mu, int(positive.sum()), len(grid))
        return result

    def mc_validate(
        self, mu: float, taus: Sequence[float], kind: QuantKind, n_samples: int, pairing: Pairing = Pairing.DISJOINT
    ) -> SweepResult:
        """
        Empirical discrimination of original and quantized samples per threshold.

        One sample set of n_samples per class is drawn and reused for every
        grid point.
        """
        kind = QuantKind(kind)
        if int(n_samples) < 100:
            raise DomainError(f"n_samples must be >= 100, got {n_samples}")
        grid = _kind_grid(kind, taus)
        spec = SynthSpec(dims=1, mu1=mu, samples_per_class=int(n_samples), seed=substream_seed(self.seed, _MC_UNIT))
        data = generate(spec)
        x, y = data.class_features(0)[:, 0], data.class_features(1)[:, 0]
        base = empirical_discrimination(x, y, pairing=pairing)

        def point(tau: float) -> Dict[str, float]:
            return {
                "tau": float(tau),
                "d_empirical": base,
                "dq_empirical": _safe(lambda: empirical_discrimination(x, y, QuantScheme(kind, tau), pairing)),
            }

        result = SweepResult(
            "mc",
            table_columns("mc"),
            metadata={"mu": mu, "kind": kind.value, "n_samples": int(n_samples), "seed": self.seed},
        )
        for row in self._map(point, list(grid), "monte-carlo"):
            result.add_row(**row)
        return result

    # ------------------------------------------------------------------
    # Synthetic classification
    # ------------------------------------------------------------------

    def synth_classify(
        self,
        spec: SynthSpec,
        taus: Sequence[float],
        kind: QuantKind,
        options: ClassifyOptions,
        repeats: int,
        n_classes: int = 2,
        scaled_mqe: bool = False,
    ) -> SweepResult:
        """
        Mean test accuracy of quantized features over seeded repeats.

        Each repeat regenerates the data from substream (seed, repeat) and
        splits it. Besides the table, metadata records the best-accuracy
        threshold and the accuracy at the per-repeat MQE threshold.
        """
        kind = QuantKind(kind)
        if int(repeats) < 1:
            raise DomainError(f"repeats must be >= 1, got {repeats}")
        grid = _kind_grid(kind, taus)

        def trial(repeat: int) -> Tuple[float, np.ndarray, np.ndarray, float, float]:
            unit_seed = substream_seed(self.seed, repeat)
            trial_spec = spec.with_seed(unit_seed)
            data = generate(trial_spec) if n_classes == 2 else generate_multiclass(trial_spec, n_classes)
            train, test = split(data, options.train_fraction, seed=unit_seed)
            acc_original = options.score(train, test, unit_seed)
            acc_quantized = np.empty(grid.size)
            errors = np.empty(grid.size)
            for i, tau in enumerate(grid):
                scheme = QuantScheme(kind, tau)
                acc_quantized[i] = options.score(quantize_dataset(train, scheme), quantize_dataset(test, scheme), unit_seed)
                errors[i] = quantization_error(data.features, scheme)
            mqe_tau = solve_mqe_threshold(train.features, kind, scaled=scaled_mqe)
            mqe_scheme = QuantScheme(kind, mqe_tau)
            acc_mqe = options.score(quantize_dataset(train, mqe_scheme), quantize_dataset(test, mqe_scheme), unit_seed)
            return acc_original, acc_quantized, errors, mqe_tau, acc_mqe

        trials = self._map(trial, list(range(int(repeats))), "repeats")
        acc_original = np.array([t[0] for t in trials])
        acc_quantized = np.vstack([t[1] for t in trials])
        errors = np.vstack([t[2] for t in trials])
        mqe_taus = np.array([t[3] for t in trials])
        acc_mqe = np.array([t[4] for t in trials])

        models = self._spec_models(spec) if n_classes == 2 else []
        result = SweepResult(
            "synth",
            table_columns("synth", kind.value),
            metadata={
                "kind": kind.value,
                "classifier": ClassifierChoice(options.classifier).value,
                "dims": spec.dims,
                "lambda": spec.lam,
                "mu1": spec.mu1,
                "samples_per_class": spec.samples_per_class,
                "classes": n_classes,
                "seed": self.seed,
                "quant_error": "unscaled",
            },
        )
        mean_acc = acc_quantized.mean(axis=0)
        for i, tau in enumerate(grid):
            d_orig, d_quant, cond = self._model_columns(models, kind, float(tau))
            result.add_row(
                **{
                    "tau": float(tau),
                    "acc_original": float(acc_original.mean()),
                    f"acc_{kind.value}": float(mean_acc[i]),
                    "acc_stddev": float(acc_quantized[:, i].std()),
                    "d_original": d_orig,
                    "d_quantized": d_quant,
                    "condition_value": cond,
                    "quant_error": float(errors[:, i].mean()),
                    "repeats": int(repeats),
                }
            )

        best = int(np.argmax(mean_acc))
        result.metadata.update(
            {
                "best_tau": float(grid[best]),
                "best_accuracy": float(mean_acc[best]),
                "original_accuracy": float(acc_original.mean()),
                "mqe_tau": float(mqe_taus.mean()),
                "mqe_accuracy": float(acc_mqe.mean()),
                "mqe_scaled": bool(scaled_mqe),
            }
        )
        logger.info(
            "synth %s: original %.4f, best %.4f at tau=%.4g, MQE %.4f at tau=%.4g",
            kind.value,
            acc_original.mean(),
            mean_acc[best],
            grid[best],
            acc_mqe.mean(),
            mqe_taus.mean(),
        )
        return result

    @staticmethod
    def _spec_models(spec: SynthSpec) -> List[ClassPairModel]:
        return [ClassPairModel.standardized(abs(float(m))) for m in spec.means()]

    @staticmethod
    def _model_columns(models: List[ClassPairModel], kind: QuantKind, tau: float) -> Tuple[float, float, float]:
        """Mean closed-form d_original, d_quantized and condition over per-dimension models."""
        if not models:
            return math.nan, math.nan, math.nan
        scheme = QuantScheme(kind, tau)
        d_orig = float(np.mean([d_original(m) for m in models]))
        d_quant = _safe(lambda: np.mean([d_quantized(m, scheme) for m in models]))
        cond = float(np.mean([condition(m, kind, tau) for m in models]))
        return d_orig, d_quant, cond

    # ------------------------------------------------------------------
    # Solver runs
    # ------------------------------------------------------------------

    def solve_model(self, mu: float, kind: QuantKind, cfg: SolverConfig) -> Dict[str, Any]:
        """Theory mode: solve for the standardized model with mean mu."""
        model = ClassPairModel.standardized(mu)
        solved = solve_threshold(model, kind, cfg)
        report = {"mode": "theory", "mu": mu, "sigma": model.sigma}
        report.update(solved.to_dict())
        return report

    def solve_dataset(
        self,
        data: LabeledDataset,
        kind: QuantKind,
        cfg: SolverConfig,
        options: ClassifyOptions,
        scaled_mqe: bool = False,
        standardize: bool = True,
    ) -> Dict[str, Any]:
        """
        Empirical mode: fit per-dimension models on the training part, solve a
        uniform threshold, and compare accuracy at tau*, at the MQE threshold,
        and on the original features.
        """
        kind = QuantKind(kind)
        if data.classes.size != 2:
            raise DegenerateClassesError(f"solve needs a two-class dataset, got {data.classes.size} classes")
        prepared = standardize_dataset(data) if standardize else data
        train, test = split(prepared, options.train_fraction, seed=self.seed)
        models = fit_dimension_models(train)
        solved: SolverResult = solve_threshold(models, kind, cfg)
        mqe_tau = solve_mqe_threshold(train.features, kind, scaled=scaled_mqe)

        def score_at(tau: float) -> float:
            scheme = QuantScheme(kind, tau)
            return options.score(quantize_dataset(train, scheme), quantize_dataset(test, scheme), self.seed)

        report: Dict[str, Any] = {"mode": "dataset", "dimensions_modelled": len(models), "n_dims": data.n_dims}
        report.update(solved.to_dict())
        report.update(
            {
                "mqe_tau": mqe_tau,
                "mqe_scaled": bool(scaled_mqe),
                "accuracy_ours": score_at(solved.tau_star),
                "accuracy_mqe": score_at(mqe_tau),
                "accuracy_original": options.score(train, test, self.seed),
                "classifier": ClassifierChoice(options.classifier).value,
            }
        )
        logger.info(
            "solve %s: ours %.4f (tau=%.4g), MQE %.4f (tau=%.4g), original %.4f",
            kind.value,
            report["accuracy_ours"],
            solved.tau_star,
            report["accuracy_mqe"],
            mqe_tau,
            report["accuracy_original"],
        )
        return report

    # ------------------------------------------------------------------
    # Real-data classification
    # ------------------------------------------------------------------

    def sample_class_pairs(self, classes: Sequence[int], max_pairs: int) -> List[Tuple[int, int]]:
        """Unordered class pairs, sampled without replacement down to max_pairs."""
        pairs = list(itertools.combinations(sorted(int(c) for c in classes), 2))
        if max_pairs < 1:
            raise DomainError(f"max_pairs must be >= 1, got {max_pairs}")
        if len(pairs) <= max_pairs:
            return pairs
        rng = np.random.default_rng(substream_seed(self.seed, _PAIR_SAMPLING_UNIT))
        chosen = np.sort(rng.choice(len(pairs), size=max_pairs, replace=False))
        return [pairs[i] for i in chosen]

    def real_classify(
        self,
        data: LabeledDataset,
        gammas: Sequence[float],
        kind: QuantKind,
        options: ClassifyOptions,
        max_pairs: int = 45,
        standardize: bool = True,
        multiclass: bool = False,
    ) -> SweepResult:
        """
        Accuracy of original and quantized features with tau = gamma * eta.

        eta is the mean absolute feature value over every vector taking part
        in the run. Pairs with fewer than 2k rows in a class are skipped.
        """
        kind = QuantKind(kind)
        gammas = np.asarray(gammas, dtype=np.float64)
        if gammas.size == 0:
            raise DomainError("gamma grid is empty")
        if np.any(np.diff(gammas) < 0):
            raise DomainError("gamma grid must be sorted")
        if data.classes.size < 2:
            raise DegenerateClassesError("real-data classification needs at least two classes")

        prepared = standardize_dataset(data) if standardize else data
        units: List[Tuple[int, ...]] = (
            [tuple(int(c) for c in prepared.classes)] if multiclass else self.sample_class_pairs(prepared.classes, max_pairs)
        )
        participating = prepared.select_classes(sorted({c for unit in units for c in unit}))
        eta = float(np.mean(np.abs(participating.features)))
        taus = gammas * eta
        if kind is QuantKind.TERNARY and np.any(taus < 0.0):
            raise DomainError("ternary thresholds need gamma >= 0")

        min_rows = 2 * options.k

        def run_unit(indexed: Tuple[int, Tuple[int, ...]]) -> Optional[Dict[str, np.ndarray]]:
            index, labels = indexed
            subset = prepared.select_classes(labels)
            counts = subset.class_counts()
            if options.classifier is not ClassifierChoice.SVM and min(counts.values()) < min_rows:
                logger.warning("Skipping classes %s: a class has fewer than %d rows", labels, min_rows)
                return None
            unit_seed = substream_seed(self.seed, index)
            train, test = split(subset, options.train_fraction, seed=unit_seed)
            two_class = len(labels) == 2
            out = {
                "acc_original": options.score(train, test, unit_seed),
                "d_original": self._discrimination(subset, None) if two_class else math.nan,
                "acc_quantized": np.empty(taus.size),
                "d_quantized": np.full(taus.size, math.nan),
            }
            for i, tau in enumerate(taus):
                scheme = QuantScheme(kind, tau)
                out["acc_quantized"][i] = options.score(
                    quantize_dataset(train, scheme), quantize_dataset(test, scheme), unit_seed
                )
                if two_class:
                    out["d_quantized"][i] = self._discrimination(subset, scheme)
            return out

        outcomes = [o for o in self._map(run_unit, list(enumerate(units)), "class pairs") if o is not None]
        if not outcomes:
            raise DegenerateClassesError("no class pair has enough rows to classify")

        acc_quantized = np.vstack([o["acc_quantized"] for o in outcomes])
        d_quant = np.vstack([o["d_quantized"] for o in outcomes])
        acc_original = float(np.mean([o["acc_original"] for o in outcomes]))
        d_orig = self._nanmean([o["d_original"] for o in outcomes])

        result = SweepResult(
            "real",
            table_columns("real", kind.value),
            metadata={
                "kind": kind.value,
                "eta": eta,
                "pairs": len(outcomes),
                "multiclass": multiclass,
                "classifier": ClassifierChoice(options.classifier).value,
                "seed": self.seed,
                "quant_error": "unscaled",
            },
        )
        for i, (gamma, tau) in enumerate(zip(gammas, taus)):
            result.add_row(
                **{
                    "gamma": float(gamma),
                    "tau": float(tau),
                    "acc_original": acc_original,
                    f"acc_{kind.value}": float(acc_quantized[:, i].mean()),
                    "acc_stddev": float(acc_quantized[:, i].std()),
                    "d_original": d_orig,
                    "d_quantized": self._nanmean(d_quant[:, i]),
                    "quant_error": quantization_error(participating.features, QuantScheme(kind, tau)),
                    "pairs": len(outcomes),
                }
            )
        logger.info("real %s: eta=%.4g over %d unit(s)", kind.value, eta, len(outcomes))
        return result

    @staticmethod
    def _discrimination(data: LabeledDataset, scheme: Optional[QuantScheme]) -> float:
        try:
            return dataset_discrimination(data, scheme)
        except DegenerateClassesError:
            return math.nan

    @staticmethod
    def _nanmean(values: Iterable[float]) -> float:
        finite = [v for v in values if not math.isnan(v)]
        return float(np.mean(finite)) if finite else math.nan

    # ------------------------------------------------------------------
    # Existence ranges
    # ------------------------------------------------------------------

    def existence(
        self,
        kinds: Sequence[QuantKind] = (QuantKind.BINARY, QuantKind.TERNARY),
        mu_step: float = 0.01,
        tau_step: float = 0.01,
        tau_max: float = 3.0,
    ) -> SweepResult:
        """Smallest mu on the mu grid admitting a positive condition, per kind."""
        mu_grid = tau_grid(mu_step, 1.0 - mu_step / 2.0, mu_step)
        result = SweepResult("existence", table_columns("existence"))

        def scan(kind: QuantKind) -> Dict[str, Any]:
            kind = QuantKind(kind)
            low = 0.0 if kind is QuantKind.TERNARY else -tau_max
            mu_min = existence_threshold(kind, mu_grid, tau_grid(low, tau_max, tau_step))
            return {"kind": kind.value, "mu_min": math.nan if mu_min is None else mu_min}

        for row in self._map(scan, list(kinds), "existence"):
            result.add_row(**row)
        return result
