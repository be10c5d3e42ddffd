from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from abstractions.service import IService

from constants.tolerance import Tolerance

from dtos.configurations.search import SearchConfigurationDTO
from dtos.responses.search import FeatureConfidenceDTO, SearchResultDTO

from errors.bad_input_error import BadInputError

from models.constraint import ConstraintSet
from models.feature import Feature, FeatureScoreTable, all_features
from models.scm import Experiment

from services.search.loss import CompiledConstraints
from services.search.minimize import LossMinimizationService


class FeatureConfidenceService(IService):
    """Run-twice feature scores: optimal loss with the feature absent minus with it present."""

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.minimization_service = LossMinimizationService(urn=self.urn)

    def _score(self, absent: SearchResultDTO, present: SearchResultDTO) -> FeatureConfidenceDTO:
        score = absent.loss - present.loss
        if abs(score) <= Tolerance.LOSS:
            score = 0.0
        return FeatureConfidenceDTO(
            score=score,
            absent_loss=absent.loss,
            present_loss=present.loss,
            certified_absent=absent.certified,
            certified_present=present.certified
        )

    def feature_confidence(
        self,
        constraints: ConstraintSet,
        setup: Sequence[Experiment],
        config: SearchConfigurationDTO,
        feature: Feature,
        rng: Optional[np.random.Generator] = None
    ) -> FeatureConfidenceDTO:

        index = self.feature_index(setup, feature)
        compiled = CompiledConstraints(setup[0].n, constraints, setup, config.mode)
        absent = self.minimization_service.minimize_loss(constraints, setup, config, {index: False}, rng, compiled=compiled)
        present = self.minimization_service.minimize_loss(constraints, setup, config, {index: True}, rng, compiled=compiled)
        return self._score(absent, present)

    def feature_index(self, setup: Sequence[Experiment], feature: Feature) -> int:
        if not setup:
            raise BadInputError(response_message="The setup has no experiments.", response_key="error_empty_setup")
        features = all_features(setup[0].n)
        if feature not in features:
            raise BadInputError(
                response_message=f"Feature {feature} is not part of a {setup[0].n}-node graph.",
                response_key="error_unknown_feature"
            )
        return features.index(feature)

    def feature_confidences(
        self,
        constraints: ConstraintSet,
        setup: Sequence[Experiment],
        config: SearchConfigurationDTO,
        rng: Optional[np.random.Generator] = None
    ) -> List[FeatureConfidenceDTO]:
        """Scores for every feature in canonical order.

        The unpinned optimum answers one side of every feature: the side matching the
        feature's presence in that optimum. Only the other side needs a pinned solve.
        """

        if not setup:
            raise BadInputError(response_message="The setup has no experiments.", response_key="error_empty_setup")

        compiled = CompiledConstraints(setup[0].n, constraints, setup, config.mode)
        unpinned = self.minimization_service.minimize_loss(constraints, setup, config, rng=rng, compiled=compiled)

        confidences = []
        for index, feature in enumerate(all_features(setup[0].n)):
            in_optimum = feature.present_in(unpinned.graph)
            other = self.minimization_service.minimize_loss(constraints, setup, config, {index: not in_optimum}, rng, compiled=compiled)
            absent, present = (other, unpinned) if in_optimum else (unpinned, other)
            confidences.append(self._score(absent, present))
        return confidences

    def ensemble_predict(self, scores: FeatureScoreTable, t_asp: float = 0.0) -> Tuple[bool, ...]:
        """Present iff the score exceeds ``t_asp``; undetermined features fall to absent."""
        return tuple(score > t_asp for score in scores.scores)
