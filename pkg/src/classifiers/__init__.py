"""
Classifiers package.

KNN (Euclidean and cosine) and linear SVM, used to measure downstream
accuracy on original and quantized features.
"""

from .choice import ClassifierChoice, train_and_predict
from .knn import KnnClassifier, KnnConfig, KnnMetric, knn_predict
from .metrics import accuracy
from .svm import LinearSvmModel, SvmConfig, svm_predict, svm_train

__all__ = [
    "ClassifierChoice",
    "train_and_predict",
    "KnnClassifier",
    "KnnConfig",
    "KnnMetric",
    "knn_predict",
    "accuracy",
    "LinearSvmModel",
    "SvmConfig",
    "svm_predict",
    "svm_train",
]
