"""
Command-line harness package.

Dataset CSV ingestion, experiment orchestration, sweep tables and
plot-script emission.
"""

from .dataset_io import read_dataset_csv, write_dataset_csv
from .experiments import ClassifyOptions, ExperimentRunner, quantize_dataset, tau_grid
from .plots import emit_plot_script
from .results import SweepResult, format_value, read_sweep_csv

__all__ = [
    "read_dataset_csv",
    "write_dataset_csv",
    "ClassifyOptions",
    "ExperimentRunner",
    "quantize_dataset",
    "tau_grid",
    "emit_plot_script",
    "SweepResult",
    "format_value",
    "read_sweep_csv",
]
