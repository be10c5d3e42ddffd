from typing import Any, List, Optional, Sequence

import numpy as np

from abstractions.error import IError
from abstractions.service import IService

from constants.feature_type import FeatureType
from constants.method import Method
from constants.tolerance import Tolerance

from dtos.configurations.llc import LlcConfigurationDTO

from errors.bad_input_error import BadInputError

from models.feature import FeatureScoreTable, all_features
from models.llc import FaithfulnessConstraints, LlcEstimate
from models.scm import Dataset, Experiment

from services.llc.effects import TotalEffectService
from services.llc.faithfulness import FaithfulnessService
from services.llc.noise import NoiseCovarianceService
from services.llc.system import LlcSystemService

from utilities.random import RandomStream, RandomUtility
from utilities.solver import SolverUtility


class LlcDiscoveryService(IService):
    """LLC estimator with and without faithfulness rows, scored by bootstrap z-scores."""

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.effect_service = TotalEffectService(urn=self.urn)
        self.system_service = LlcSystemService(urn=self.urn)
        self.noise_service = NoiseCovarianceService(urn=self.urn)
        self.faithfulness_service = FaithfulnessService(urn=self.urn)
        self.solver_utility = SolverUtility(urn=self.urn)

    def method_of(self, config: LlcConfigurationDTO) -> str:
        return Method.LLC_F if config.use_faithfulness else Method.LLC_NF

    def estimate(self, datasets: Sequence[Dataset], config: LlcConfigurationDTO) -> LlcEstimate:
        """Single pass: total effects, linear system (plus faithfulness rows), solve, noise covariance.

        On exact covariances the system is solved without penalty whenever it has full column rank.
        """

        effects = [self.effect_service.estimate_total_effects(dataset) for dataset in datasets]
        system = self.system_service.assemble_system(effects)

        faithfulness = FaithfulnessConstraints(n=system.n)
        if config.use_faithfulness:
            faithfulness = self.faithfulness_service.faithfulness_constraints(datasets, config.alpha_llc)
            system = system.extend(*faithfulness.rows())

        full_rank = system.has_full_column_rank()
        penalty_lambda = config.penalty_lambda
        if datasets[0].is_infinite and full_rank:
            penalty_lambda = 0.0

        b_hat = self.solver_utility.solve_penalized(
            system,
            penalty=config.penalty,
            penalty_lambda=penalty_lambda,
            tolerance=config.tolerance,
            max_iter=config.max_iter
        )
        sigma_hat = self.noise_service.estimate_noise_covariance(b_hat, datasets, zero_pairs=faithfulness.sigma_zero_pairs)
        return LlcEstimate(b_hat=b_hat, sigma_hat=sigma_hat, full_rank=full_rank)

    def feature_values(self, estimate: LlcEstimate) -> np.ndarray:
        """Estimates in canonical feature order: ``b[t][s]`` for ``s -> t`` and ``sigma[i][j]`` for ``i <-> j``."""
        return np.array([
            estimate.b_hat[feature.target, feature.source] if feature.feature_type == FeatureType.DIRECTED
            else estimate.sigma_hat[feature.source, feature.target]
            for feature in all_features(estimate.b_hat.shape[0])
        ])

    def resample(self, dataset: Dataset, rng: np.random.Generator) -> Dataset:
        m = dataset.size
        return Dataset(experiment=dataset.experiment, samples=dataset.samples[rng.integers(0, m, size=m)])

    def z_scores(self, values: np.ndarray) -> np.ndarray:
        """``|mean| / std`` per column of a resamples x features array, std floored and scores capped."""
        mean = values.mean(axis=0)
        std = np.maximum(values.std(axis=0, ddof=1), Tolerance.STD_FLOOR)
        return np.minimum(np.abs(mean) / std, Tolerance.SCORE_CAP)

    def validate(self, datasets: Sequence[Dataset], setup: Optional[Sequence[Experiment]], config: LlcConfigurationDTO) -> None:

        if not datasets:
            raise BadInputError(response_message="LLC needs at least one dataset.", response_key="error_empty_setup")
        if setup is not None and [dataset.experiment for dataset in datasets] != list(setup):
            raise BadInputError(
                response_message="Datasets are not aligned with the setup.",
                response_key="error_datasets_setup_mismatch"
            )
        if not any(dataset.experiment.is_null for dataset in datasets):
            raise BadInputError(
                response_message="LLC needs the null experiment among the datasets.",
                response_key="error_missing_null_experiment"
            )
        if len({dataset.is_infinite for dataset in datasets}) != 1:
            raise BadInputError(
                response_message="Cannot mix exact covariances with finite samples.",
                response_key="error_mixed_dataset_sizes"
            )
        if config.penalty_lambda < 0:
            raise BadInputError(
                response_message=f"Penalty weight must be nonnegative, got {config.penalty_lambda}.",
                response_key="error_negative_penalty"
            )
        if not datasets[0].is_infinite and config.bootstrap_reps < 2:
            raise BadInputError(
                response_message=f"Bootstrap scoring needs at least 2 resamples, got {config.bootstrap_reps}.",
                response_key="error_too_few_resamples"
            )

    def llc_discover(
        self,
        datasets: Sequence[Dataset],
        setup: Optional[Sequence[Experiment]],
        config: LlcConfigurationDTO,
        rng: Optional[np.random.Generator] = None
    ) -> FeatureScoreTable:

        self.validate(datasets, setup, config)
        n = datasets[0].experiment.n
        method = self.method_of(config)

        if datasets[0].is_infinite:
            values = self.feature_values(self.estimate(datasets, config))
            scores = Tolerance.SCORE_CAP * (np.abs(values) > Tolerance.INFINITE_SUPPORT)
            return FeatureScoreTable(n=n, method=method, scores=tuple(scores))

        rng = rng if rng is not None else RandomUtility(seed=0, urn=self.urn).generator(RandomStream.BOOTSTRAP)
        self.logger.debug(f"Running {config.bootstrap_reps} bootstrap resamples for {method}")
        resampled_values: List[np.ndarray] = []
        for index in range(config.bootstrap_reps):
            resample_rng = RandomUtility.child(rng, RandomStream.BOOTSTRAP, index)
            resampled = [self.resample(dataset, resample_rng) for dataset in datasets]
            try:
                resampled_values.append(self.feature_values(self.estimate(resampled, config)))
            except IError as err:
                self.logger.error(f"Resample {index} of {method} failed: {err.response_key}")
                raise err.in_resample(index)

        scores = self.z_scores(np.vstack(resampled_values))
        return FeatureScoreTable(n=n, method=method, scores=tuple(scores))
