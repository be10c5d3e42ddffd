import math

from typing import Any, Optional, Sequence, Tuple

import numpy as np

from scipy.stats import norm

from abstractions.service import IService

from constants.tolerance import Tolerance

from errors.bad_input_error import BadInputError
from errors.degenerate_input_error import DegenerateInputError
from errors.insufficient_sample_error import InsufficientSampleError

from models.scm import Dataset


class CITestService(IService):
    """Fisher-z conditional independence tests on partial correlations."""

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn

    def partial_correlation(self, covariance: np.ndarray, i: int, j: int, s: Sequence[int] = ()) -> float:
        """Partial correlation of ``x_i, x_j`` given ``x_s`` from the precision of the ``{i, j} + s`` block."""

        s = list(s)
        if not s:
            denominator = covariance[i, i] * covariance[j, j]
            if denominator <= 0.0:
                raise DegenerateInputError(
                    response_message=f"Zero variance at node {i if covariance[i, i] <= 0 else j}.",
                    response_key="error_zero_variance"
                )
            return float(np.clip(covariance[i, j] / math.sqrt(denominator), -1.0, 1.0))

        index = [i, j] + s
        block = covariance[np.ix_(index, index)]
        try:
            if np.linalg.cond(block) > 1e12:
                raise np.linalg.LinAlgError("ill-conditioned")
            precision = np.linalg.inv(block)
        except np.linalg.LinAlgError:
            raise DegenerateInputError(
                response_message=f"Covariance block on nodes {index} is singular.",
                response_key="error_singular_covariance_block"
            )

        denominator = precision[0, 0] * precision[1, 1]
        if denominator <= 0.0:
            raise DegenerateInputError(
                response_message=f"Covariance block on nodes {index} is not positive definite.",
                response_key="error_singular_covariance_block"
            )
        return float(np.clip(-precision[0, 1] / math.sqrt(denominator), -1.0, 1.0))

    def fisher_z_p_value(self, r: float, m: int, conditioning_size: int) -> float:
        if abs(r) >= 1.0:
            return 0.0
        statistic = math.sqrt(m - conditioning_size - 3) * abs(math.atanh(r))
        return float(min(1.0, 2.0 * norm.sf(statistic)))

    def ci_test(self, dataset: Dataset, i: int, j: int, s: Sequence[int], alpha: float) -> Tuple[float, bool]:
        """Two-sided Fisher-z test; returns ``(p_value, is_independent)`` with independence iff p > alpha."""

        if dataset.is_infinite:
            raise BadInputError(
                response_message="Exact-covariance datasets are not tested; use the exact independence check.",
                response_key="error_ci_test_on_exact_covariance"
            )
        m = dataset.size
        if m <= len(s) + 3:
            raise InsufficientSampleError(
                response_message=f"Fisher-z needs more than {len(s) + 3} samples, got {m}.",
                response_key="error_insufficient_sample_size"
            )

        covariance = dataset.covariance()
        try:
            r = self.partial_correlation(covariance, i, j, s)
        except DegenerateInputError as err:
            r = self.residual_correlation(covariance, i, j, s)
            if r is None or 1.0 - abs(r) > Tolerance.COLLINEAR_RESIDUALS:
                raise err
            # residuals coincide up to sign: |r| = 1
            r = math.copysign(1.0, r)
        p_value = self.fisher_z_p_value(r, m, len(s))
        return p_value, p_value > alpha

    def residual_correlation(self, covariance: np.ndarray, i: int, j: int, s: Sequence[int]) -> Optional[float]:
        """Correlation of the residuals of ``x_i`` and ``x_j`` regressed on ``x_s``.

        None when the ``x_s`` block is singular or either residual has no variance left.
        """

        s = list(s)
        pair = [i, j]
        residual = covariance[np.ix_(pair, pair)]
        if s:
            block = covariance[np.ix_(s, s)]
            if np.linalg.cond(block) > 1e12:
                return None
            cross = covariance[np.ix_(pair, s)]
            residual = residual - cross @ np.linalg.solve(block, cross.T)

        floor = Tolerance.STD_FLOOR * max(covariance[i, i], covariance[j, j], 0.0)
        if residual[0, 0] <= floor or residual[1, 1] <= floor:
            return None
        return float(np.clip(residual[0, 1] / math.sqrt(residual[0, 0] * residual[1, 1]), -1.0, 1.0))

    def exact_independent(self, covariance: np.ndarray, i: int, j: int, s: Sequence[int] = ()) -> bool:
        return abs(self.partial_correlation(covariance, i, j, s)) < Tolerance.EXACT_INDEPENDENCE

    def is_independent(self, dataset: Dataset, i: int, j: int, s: Sequence[int], alpha: float) -> bool:
        """Independence verdict for either kind of dataset: exact partial correlation or Fisher-z."""
        if dataset.is_infinite:
            return self.exact_independent(dataset.exact, i, j, s)
        return self.ci_test(dataset, i, j, s, alpha)[1]

    def constraint_weight(self, p_value: float, alpha: float) -> float:
        """Confidence weight ``|log p - log alpha|``; zero exactly when p equals alpha."""
        return abs(math.log(max(p_value, Tolerance.P_VALUE_FLOOR)) - math.log(alpha))
