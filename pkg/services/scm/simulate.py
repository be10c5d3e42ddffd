from typing import Any, Optional

import numpy as np

from abstractions.service import IService

from errors.bad_input_error import BadInputError

from models.scm import Dataset, Experiment, LinearScm

from services.scm.model import LinearScmService


class DataSimulationService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.scm_service = LinearScmService(urn=self.urn)

    def sample_data(self, scm: LinearScm, experiment: Experiment, m: int, rng: np.random.Generator) -> Dataset:

        if m < 1:
            raise BadInputError(
                response_message=f"Sample count must be at least 1, got {m}.",
                response_key="error_invalid_sample_count"
            )
        covariance = self.scm_service.analytic_covariance(scm, experiment)
        samples = rng.multivariate_normal(np.zeros(scm.n), covariance, size=m)
        return Dataset(experiment=experiment, samples=samples)

    def exact_dataset(self, scm: LinearScm, experiment: Experiment) -> Dataset:
        return Dataset(experiment=experiment, exact=self.scm_service.analytic_covariance(scm, experiment))

    def simulate(self, scm: LinearScm, experiment: Experiment, size: Optional[int], rng: np.random.Generator) -> Dataset:
        """Finite sample of ``size`` rows, or the exact covariance when ``size`` is None."""
        if size is None:
            return self.exact_dataset(scm, experiment)
        return self.sample_data(scm, experiment, size, rng)
