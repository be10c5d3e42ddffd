from itertools import combinations
from typing import Any, List

import numpy as np

from abstractions.service import IService

from dtos.configurations.scm import ScmSamplerConfigurationDTO

from errors.bad_input_error import BadInputError
from errors.generation_error import GenerationError

from models.scm import Experiment, LinearScm

from services.scm.model import LinearScmService
from services.scm.setup import ExperimentSetupService

from utilities.graph import GraphUtility


class ScmSamplerService(IService):
    """Random sparse cyclic linear SCMs with correlated noise (hidden confounders)."""

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.scm_service = LinearScmService(urn=self.urn)
        self.setup_service = ExperimentSetupService(urn=self.urn)
        self.graph_utility = GraphUtility(urn=self.urn)

    def validate_config(self, config: ScmSamplerConfigurationDTO) -> None:

        n = config.n_nodes
        if n < 2:
            raise BadInputError(response_message=f"n_nodes must be at least 2, got {n}.", response_key="error_invalid_n_nodes")
        if not 0 < config.coef_low < config.coef_high:
            raise BadInputError(response_message="Coefficient bounds need 0 < coef_low < coef_high.", response_key="error_invalid_coef_bounds")
        if not 0 < config.confounder_low <= config.confounder_high:
            raise BadInputError(response_message="Confounder bounds need 0 < confounder_low <= confounder_high.", response_key="error_invalid_confounder_bounds")
        if not 0 <= config.n_confounders <= n * (n - 1) // 2:
            raise BadInputError(response_message=f"n_confounders must lie in 0..{n * (n - 1) // 2}.", response_key="error_invalid_n_confounders")
        if config.max_in_degree < 0:
            raise BadInputError(response_message="max_in_degree must be nonnegative.", response_key="error_invalid_max_in_degree")
        if config.max_attempts < 1:
            raise BadInputError(response_message="max_attempts must be positive.", response_key="error_invalid_max_attempts")

    def _draw_coefficients(self, config: ScmSamplerConfigurationDTO, rng: np.random.Generator) -> np.ndarray:

        n = config.n_nodes
        b = np.zeros((n, n))
        max_in_degree = min(config.max_in_degree, n - 1)
        for node in range(n):
            others = [other for other in range(n) if other != node]
            in_degree = int(rng.integers(0, max_in_degree + 1))
            parents = rng.choice(others, size=in_degree, replace=False)
            magnitudes = rng.uniform(config.coef_low, config.coef_high, size=in_degree)
            signs = rng.choice([-1.0, 1.0], size=in_degree)
            b[node, parents] = magnitudes * signs
        return b

    def _draw_noise_covariance(self, config: ScmSamplerConfigurationDTO, rng: np.random.Generator) -> np.ndarray:

        n = config.n_nodes
        sigma_e = np.eye(n)
        pairs = list(combinations(range(n), 2))
        for index in rng.choice(len(pairs), size=config.n_confounders, replace=False):
            i, j = pairs[int(index)]
            value = rng.uniform(config.confounder_low, config.confounder_high) * rng.choice([-1.0, 1.0])
            sigma_e[i, j] = sigma_e[j, i] = value
        return sigma_e

    def sample_random_scm(self, config: ScmSamplerConfigurationDTO, rng: np.random.Generator) -> LinearScm:
        """Rejection-sample an SCM until it has a cycle (if required), PSD noise and weak stability."""

        self.validate_config(config)
        experiments: List[Experiment] = self.setup_service.stability_experiments(config.n_nodes)

        for attempt in range(1, config.max_attempts + 1):

            b = self._draw_coefficients(config, rng)
            sigma_e = self._draw_noise_covariance(config, rng)

            if np.linalg.eigvalsh(sigma_e).min() < 0.0:
                continue

            scm = LinearScm(b=b, sigma_e=sigma_e)
            if config.require_cycle and not self.graph_utility.has_directed_cycle(self.scm_service.graph_of(scm)):
                continue
            if not self.scm_service.is_weakly_stable(scm, experiments):
                continue

            self.logger.debug(f"Sampled SCM after {attempt} attempts")
            return scm

        self.logger.error(f"Rejection budget of {config.max_attempts} attempts exhausted")
        raise GenerationError(
            response_message=f"No admissible SCM found within {config.max_attempts} attempts.",
            response_key="error_generation_budget_exhausted"
        )

    def sample_cohort(self, config: ScmSamplerConfigurationDTO, rngs: List[np.random.Generator]) -> List[LinearScm]:

        self.logger.debug(f"Sampling cohort of {len(rngs)} SCMs")
        cohort = [self.sample_random_scm(config, rng) for rng in rngs]
        self.logger.debug(f"Sampled cohort of {len(rngs)} SCMs")
        return cohort
