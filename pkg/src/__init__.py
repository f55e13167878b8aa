"""
Quantization discrimination toolkit.

Binary and ternary threshold quantization, closed-form and empirical
two-class feature discrimination, threshold solvers, and the experiment
harness that ties them together.
"""

__version__ = "0.1.0"
