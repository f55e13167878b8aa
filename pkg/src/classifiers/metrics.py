"""
Classification accuracy.
"""

import numpy as np

from ..errors import DomainError


def accuracy(predicted, truth) -> float:
    """Fraction of positions where `predicted` equals `truth`."""
    predicted = np.asarray(predicted).ravel()
    truth = np.asarray(truth).ravel()
    if predicted.size != truth.size:
        raise DomainError(f"length mismatch: {predicted.size} predictions for {truth.size} labels")
    if truth.size == 0:
        raise DomainError("accuracy of an empty prediction set is undefined")
    return float(np.mean(predicted == truth))
