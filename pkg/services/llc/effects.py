from typing import Any

from abstractions.service import IService

from errors.degenerate_input_error import DegenerateInputError

from models.llc import TotalEffects
from models.scm import Dataset


class TotalEffectService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn

    def estimate_total_effects(self, dataset: Dataset) -> TotalEffects:
        """``t(x_i ~> x_u || J) = C[u, i] / C[i, i]`` for every intervened i and unintervened u."""

        experiment = dataset.experiment
        covariance = dataset.covariance()
        effects = {}
        for i in experiment.j:
            variance = covariance[i, i]
            if variance <= 0.0:
                raise DegenerateInputError(
                    response_message=f"Intervened node {i} has zero variance.",
                    response_key="error_zero_intervention_variance"
                )
            for u in experiment.u:
                effects[(i, u)] = float(covariance[u, i] / variance)
        return TotalEffects(experiment=experiment, effects=effects)
