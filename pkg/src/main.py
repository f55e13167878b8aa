"""
Command-line entry point for the quantization discrimination toolkit.

Subcommands run the closed-form, Monte-Carlo, synthetic and real-data
experiments, the threshold solvers, and plot-script emission. Result tables
go to --output or stdout; diagnostics go to stderr.
"""

import argparse
import logging
import os
import sys
from typing import Any, List, Optional, Sequence

import numpy as np
import yaml

from .classifiers import ClassifierChoice, KnnConfig, SvmConfig
from .cli_harness import (
    ClassifyOptions,
    ExperimentRunner,
    SweepResult,
    emit_plot_script,
    read_dataset_csv,
    tau_grid,
    write_dataset_csv,
)
from .config import config
from .discrim import Pairing
from .errors import DatasetFormatError, DomainError, SchemaError
from .quant_core import QuantKind
from .synth_data import SynthSpec, generate, generate_multiclass
from .threshold_opt import SolverConfig


logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: str = "INFO", log_file: Optional[str] = None) -> None:
    """Log to stderr, and also to `log_file` when given."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.INFO), format=LOG_FORMAT, handlers=handlers, force=True)


def parse_grid(text: str) -> np.ndarray:
    """Either a comma list "0.5,1,2" or an inclusive range "start:stop:step"."""
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            return tau_grid(start, stop, step)
        return np.array([float(p) for p in text.split(",") if p.strip()], dtype=np.float64)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quant-discrimination",
        description="Binary/ternary threshold quantization and feature discrimination experiments",
    )
    parser.add_argument("--config", type=str, help="Path to configuration file")
    parser.add_argument("--log-level", type=str, help="Logging level (DEBUG, INFO, WARNING, ...)")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Run seed")
    common.add_argument("--output", type=str, help="Output file (default: stdout)")
    common.add_argument("--workers", type=int, help="Worker threads for grid points / repeats / pairs")
    common.add_argument("--progress", action="store_true", help="Show progress bars on stderr")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--kind", choices=[k.value for k in QuantKind], default=QuantKind.BINARY.value)
    grid.add_argument("--tau-min", type=float)
    grid.add_argument("--tau-max", type=float)
    grid.add_argument("--tau-step", type=float)

    classify = argparse.ArgumentParser(add_help=False)
    classify.add_argument("--classifier", choices=[c.value for c in ClassifierChoice], help="Default: KNN with the knn.metric from the config")
    classify.add_argument("--k", type=int, help="KNN neighbours")
    classify.add_argument("--train-fraction", type=float)
    classify.add_argument("--scaled-mqe", action="store_true", help="Use the scaled error for the MQE baseline")

    synth = argparse.ArgumentParser(add_help=False)
    synth.add_argument("--mu", type=float, help="First-dimension mean magnitude mu1")
    synth.add_argument("--lambda", dest="lam", type=float, help="Mean decay rate")
    synth.add_argument("--dims", type=int)
    synth.add_argument("--samples", type=int, help="Samples per class")
    synth.add_argument("--classes", type=int, default=2, help="Number of classes (KNN only when > 2)")
    synth.add_argument("--random-signs", action="store_true", help="Random per-dimension mean signs")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theory-sweep", parents=[common, grid], help="Closed-form condition and discrimination over tau")
    p.add_argument("--mu", type=float, required=True)

    p = sub.add_parser("mc-validate", parents=[common, grid], help="Monte-Carlo discrimination over tau")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--samples", type=int, help="Samples per class")
    p.add_argument("--pairing", choices=[m.value for m in Pairing], default=Pairing.DISJOINT.value)

    p = sub.add_parser("synth-classify", parents=[common, grid, classify, synth], help="Accuracy sweep on synthetic data")
    p.add_argument("--repeats", type=int)

    p = sub.add_parser("solve", parents=[common, classify], help="Armijo threshold solve (theory or dataset mode)")
    p.add_argument("--kind", choices=[k.value for k in QuantKind], default=QuantKind.BINARY.value)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--mu", type=float, help="Theory mode: standardized class mean")
    source.add_argument("--input", type=str, help="Dataset mode: dataset CSV")
    p.add_argument("--header", action="store_true", help="Dataset CSV has a header line")
    p.add_argument("--tau0", type=float, help="Initial threshold")

    p = sub.add_parser("real-classify", parents=[common, classify], help="Accuracy sweep over tau = gamma * eta")
    p.add_argument("--input", type=str, required=True)
    p.add_argument("--header", action="store_true")
    p.add_argument("--kind", choices=[k.value for k in QuantKind], default=QuantKind.BINARY.value)
    p.add_argument("--gamma-grid", type=parse_grid, default=parse_grid("0:2:0.1"))
    p.add_argument("--max-pairs", type=int)
    p.add_argument("--multiclass", action="store_true", help="One multiclass run instead of class pairs")
    p.add_argument("--no-standardize", action="store_true")

    p = sub.add_parser("emit-plots", help="Write a matplotlib script for a sweep CSV")
    p.add_argument("--input", type=str, required=True)
    p.add_argument("--output", type=str, help="Script path (default: stdout)")

    p = sub.add_parser("synth-generate", parents=[synth], help="Write a synthetic dataset CSV")
    p.add_argument("--seed", type=int)
    p.add_argument("--output", type=str, required=True)
    p.add_argument("--header", action="store_true")

    p = sub.add_parser("existence", parents=[common], help="Smallest mu admitting an enhancing threshold")
    p.add_argument("--kind", choices=[k.value for k in QuantKind], help="Only this kind (default: both)")
    p.add_argument("--tau-step", type=float, default=0.01)
    p.add_argument("--mu-step", type=float, default=0.01)

    return parser


def _pick(value: Any, section: str, key: str, default: Any) -> Any:
    """Command-line value, else configuration, else the built-in default."""
    return value if value is not None else config.get(section, key, default)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        logger.info("Wrote %s", output)
    else:
        sys.stdout.write(text)


def _write_table(result: SweepResult, args: argparse.Namespace) -> None:
    digits = int(config.get("harness", "float_digits", 9))
    output = getattr(args, "output", None)
    _emit(result.to_csv(digits=digits), output)
    if output:
        logger.info("Wrote %s", result.write_metadata(output))


def _runner(args: argparse.Namespace) -> ExperimentRunner:
    return ExperimentRunner(
        seed=int(_pick(getattr(args, "seed", None), "harness", "seed", 0)),
        workers=int(_pick(getattr(args, "workers", None), "harness", "workers", 1)),
        progress=bool(getattr(args, "progress", False)),
    )


def _grid(args: argparse.Namespace) -> np.ndarray:
    return tau_grid(
        float(_pick(args.tau_min, "harness", "tau_min", -1.0)),
        float(_pick(args.tau_max, "harness", "tau_max", 1.0)),
        float(_pick(args.tau_step, "harness", "tau_step", 0.01)),
    )


def _classify_options(args: argparse.Namespace, section: str) -> ClassifyOptions:
    knn = KnnConfig.from_config(config, k=args.k)
    return ClassifyOptions(
        classifier=ClassifierChoice(args.classifier) if args.classifier else ClassifierChoice.for_metric(knn.metric),
        k=knn.k,
        train_fraction=float(_pick(args.train_fraction, section, "train_fraction", 0.8)),
        svm=SvmConfig.from_config(config),
    )


def _synth_spec(args: argparse.Namespace) -> SynthSpec:
    return SynthSpec.from_config(
        config,
        mu1=args.mu,
        lam=args.lam,
        dims=args.dims,
        samples_per_class=args.samples,
        seed=getattr(args, "seed", None),
        random_signs=True if args.random_signs else None,
    )


def cmd_theory_sweep(args: argparse.Namespace) -> int:
    result = _runner(args).theory_sweep(args.mu, _grid(args), QuantKind(args.kind))
    _write_table(result, args)
    return 0


def cmd_mc_validate(args: argparse.Namespace) -> int:
    samples = int(_pick(args.samples, "harness", "mc_samples", 10_000))
    result = _runner(args).mc_validate(args.mu, _grid(args), QuantKind(args.kind), samples, Pairing(args.pairing))
    _write_table(result, args)
    return 0


def cmd_synth_classify(args: argparse.Namespace) -> int:
    repeats = int(_pick(args.repeats, "synthetic", "repeats", 100))
    result = _runner(args).synth_classify(
        _synth_spec(args),
        _grid(args),
        QuantKind(args.kind),
        _classify_options(args, "synthetic"),
        repeats,
        n_classes=args.classes,
        scaled_mqe=args.scaled_mqe,
    )
    _write_table(result, args)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = SolverConfig.from_config(config, tau0=args.tau0)
    runner = _runner(args)
    kind = QuantKind(args.kind)
    if args.input:
        data = read_dataset_csv(args.input, header=args.header)
        report = runner.solve_dataset(
            data,
            kind,
            cfg,
            _classify_options(args, "synthetic"),
            scaled_mqe=args.scaled_mqe,
            standardize=bool(config.get("real_data", "standardize", True)),
        )
    else:
        report = runner.solve_model(args.mu, kind, cfg)
    if not report["converged"]:
        logger.warning("Solver did not converge; reporting the best iterate")
    _emit(yaml.safe_dump(_plain(report), sort_keys=False), args.output)
    return 0


def _plain(report: dict) -> dict:
    """numpy scalars to builtin types for YAML."""
    return {k: (v.item() if isinstance(v, np.generic) else v) for k, v in report.items()}


def cmd_real_classify(args: argparse.Namespace) -> int:
    data = read_dataset_csv(args.input, header=args.header)
    result = _runner(args).real_classify(
        data,
        args.gamma_grid,
        QuantKind(args.kind),
        _classify_options(args, "real_data"),
        max_pairs=int(_pick(args.max_pairs, "real_data", "max_pairs", 45)),
        standardize=not args.no_standardize and bool(config.get("real_data", "standardize", True)),
        multiclass=args.multiclass,
    )
    _write_table(result, args)
    return 0


def cmd_emit_plots(args: argparse.Namespace) -> int:
    script = emit_plot_script(args.input, args.output)
    if not args.output:
        sys.stdout.write(script)
    return 0


def cmd_synth_generate(args: argparse.Namespace) -> int:
    spec = _synth_spec(args)
    data = generate(spec) if args.classes == 2 else generate_multiclass(spec, args.classes)
    write_dataset_csv(data, args.output, header=args.header)
    return 0


def cmd_existence(args: argparse.Namespace) -> int:
    kinds = [QuantKind(args.kind)] if args.kind else [QuantKind.BINARY, QuantKind.TERNARY]
    result = _runner(args).existence(kinds, mu_step=args.mu_step, tau_step=args.tau_step)
    _write_table(result, args)
    return 0


COMMANDS = {
    "theory-sweep": cmd_theory_sweep,
    "mc-validate": cmd_mc_validate,
    "synth-classify": cmd_synth_classify,
    "solve": cmd_solve,
    "real-classify": cmd_real_classify,
    "emit-plots": cmd_emit_plots,
    "synth-generate": cmd_synth_generate,
    "existence": cmd_existence,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand, and return its exit code.

    Returns:
        0 on success (including non-converged solves), 2 on usage, parse,
        schema or domain errors
    """
    args = _build_parser().parse_args(argv)

    if args.config:
        config.use(args.config)

    setup_logging(
        args.log_level or config.get("system", "log_level", "INFO"),
        config.get("system", "log_file", None),
    )

    try:
        return COMMANDS[args.command](args)
    except (DatasetFormatError, SchemaError, DomainError) as e:
        logger.error("%s: %s", args.command, e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
