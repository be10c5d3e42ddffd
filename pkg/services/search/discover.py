from typing import Any, Optional, Sequence, Tuple

import numpy as np

from abstractions.service import IService

from constants.method import Method
from constants.separation_mode import SeparationMode

from dtos.configurations.search import SearchConfigurationDTO

from errors.bad_input_error import BadInputError

from models.constraint import ConstraintSet
from models.feature import FeatureScoreTable
from models.scm import Dataset, Experiment, LinearScm

from services.ci.constraints import ConstraintService
from services.search.confidence import FeatureConfidenceService


class AspDiscoveryService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.constraint_service = ConstraintService(urn=self.urn)
        self.confidence_service = FeatureConfidenceService(urn=self.urn)

    def method_of(self, config: SearchConfigurationDTO) -> str:
        return Method.ASP_S if config.mode == SeparationMode.SIGMA_SEP else Method.ASP_D

    def build_constraints(
        self,
        datasets: Sequence[Dataset],
        setup: Sequence[Experiment],
        config: SearchConfigurationDTO,
        max_cond: Optional[int] = None,
        scm: Optional[LinearScm] = None
    ) -> ConstraintSet:
        """Tested constraints for samples; for exact covariances the oracle when the model is known, else the covariances."""

        if not datasets[0].is_infinite:
            return self.constraint_service.enumerate_constraints(datasets, config.alpha_asp, max_cond)
        if scm is not None:
            return self.constraint_service.oracle_constraints(scm, setup, max_cond)
        return self.constraint_service.covariance_constraints(datasets, max_cond)

    def score_features(
        self,
        datasets: Sequence[Dataset],
        setup: Sequence[Experiment],
        config: SearchConfigurationDTO,
        max_cond: Optional[int] = None,
        scm: Optional[LinearScm] = None,
        rng: Optional[np.random.Generator] = None
    ) -> Tuple[FeatureScoreTable, int]:
        """Score table plus the number of features whose score rests on an uncertified search."""

        if not datasets or [dataset.experiment for dataset in datasets] != list(setup):
            raise BadInputError(
                response_message="Datasets are not aligned with the setup.",
                response_key="error_datasets_setup_mismatch"
            )
        if len({dataset.is_infinite for dataset in datasets}) != 1:
            raise BadInputError(
                response_message="Cannot mix exact covariances with finite samples.",
                response_key="error_mixed_dataset_sizes"
            )

        constraints = self.build_constraints(datasets, setup, config, max_cond, scm)
        method = self.method_of(config)
        self.logger.debug(f"Scoring features for {method} from {len(constraints)} constraints")

        confidences = self.confidence_service.feature_confidences(constraints, setup, config, rng)
        uncertified = sum(1 for confidence in confidences if not confidence.certified)
        if uncertified:
            self.logger.warning(f"{uncertified} feature scores of {method} rest on uncertified searches")

        table = FeatureScoreTable(n=setup[0].n, method=method, scores=tuple(c.score for c in confidences))
        return table, uncertified

    def asp_discover(
        self,
        datasets: Sequence[Dataset],
        setup: Sequence[Experiment],
        config: SearchConfigurationDTO,
        max_cond: Optional[int] = None,
        scm: Optional[LinearScm] = None,
        rng: Optional[np.random.Generator] = None
    ) -> FeatureScoreTable:
        return self.score_features(datasets, setup, config, max_cond, scm, rng)[0]
