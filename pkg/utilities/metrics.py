from typing import Sequence

import numpy as np

from sklearn.metrics import roc_auc_score

from abstractions.utility import IUtility

from errors.bad_input_error import BadInputError
from errors.undefined_metric_error import UndefinedMetricError

from models.feature import truth_labels
from models.graph import DirectedMixedGraph


class MetricsUtility(IUtility):

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn)
        self.urn = urn

    def accuracy(self, predictions: Sequence[bool], truth: DirectedMixedGraph) -> float:
        """Fraction of features classified correctly."""
        labels = truth_labels(truth)
        if len(predictions) != len(labels):
            raise BadInputError(
                response_message=f"Expected {len(labels)} predictions for a {truth.n}-node graph, got {len(predictions)}.",
                response_key="error_prediction_count_mismatch"
            )
        return float(np.mean(np.asarray(predictions, dtype=bool) == np.asarray(labels, dtype=bool)))

    def auc_roc(self, scores: Sequence[float], labels: Sequence[bool]) -> float:
        """Area under the ROC curve; tied scores count one half."""

        scores = np.asarray(scores, dtype=float)
        labels = np.asarray(labels, dtype=bool)
        if scores.shape != labels.shape:
            raise BadInputError(
                response_message=f"{len(scores)} scores but {len(labels)} labels.",
                response_key="error_score_label_mismatch"
            )

        n_positive = int(labels.sum())
        n_negative = len(labels) - n_positive
        if not n_positive or not n_negative:
            raise UndefinedMetricError(
                response_message="ROC area needs at least one positive and one negative label.",
                response_key="error_single_class_auc"
            )

        return float(roc_auc_score(labels, scores))

    def weak_baseline(self, truths: Sequence[DirectedMixedGraph]) -> float:
        """Mean accuracy of predicting every feature absent."""
        if not truths:
            return float("nan")
        return float(np.mean([1.0 - np.mean(truth_labels(truth)) for truth in truths]))
