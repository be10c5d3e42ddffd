from typing import Any, Iterable, Optional, Sequence, Tuple

import numpy as np

from abstractions.service import IService

from errors.bad_input_error import BadInputError
from errors.condition_error import ConditionError

from models.scm import Dataset, Experiment


class NoiseCovarianceService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn

    def estimate_noise_covariance(
        self,
        b_hat: np.ndarray,
        datasets: Sequence[Dataset],
        setup: Optional[Sequence[Experiment]] = None,
        zero_pairs: Iterable[Tuple[int, int]] = ()
    ) -> np.ndarray:
        """Average ``(I - U B) C (I - U B)^T`` over the experiments leaving both coordinates unintervened.

        Entries listed in ``zero_pairs`` are set to zero afterwards.
        """

        if setup is not None and [dataset.experiment for dataset in datasets] != list(setup):
            raise BadInputError(
                response_message="Datasets are not aligned with the setup.",
                response_key="error_datasets_setup_mismatch"
            )

        n = b_hat.shape[0]
        total = np.zeros((n, n))
        count = np.zeros((n, n))
        for dataset in datasets:
            experiment = dataset.experiment
            residual = np.eye(n) - experiment.u_matrix @ b_hat
            projected = residual @ dataset.covariance() @ residual.T
            mask = np.outer(experiment.u_matrix.diagonal(), experiment.u_matrix.diagonal())
            total += projected * mask
            count += mask

        uncovered = np.argwhere(count == 0)
        if len(uncovered):
            i, j = (int(node) for node in uncovered[0])
            raise ConditionError(
                response_message=f"Covariance condition violated: nodes {i} and {j} are never jointly unintervened.",
                response_key="error_covariance_condition",
                pair=(min(i, j), max(i, j))
            )

        sigma_hat = total / count
        for i, j in zero_pairs:
            sigma_hat[i, j] = sigma_hat[j, i] = 0.0
        return (sigma_hat + sigma_hat.T) / 2.0
