import warnings

import numpy as np

from sklearn.exceptions import ConvergenceWarning
from sklearn.linear_model import Lasso, Ridge

from abstractions.utility import IUtility

from constants.penalty import Penalty

from errors.bad_input_error import BadInputError
from errors.convergence_error import ConvergenceError

from models.llc import LlcSystem, column_pair


class SolverUtility(IUtility):

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn)
        self.urn = urn

    def to_matrix(self, b: np.ndarray, n: int) -> np.ndarray:
        """Reshape the unknown vector into B with a zero diagonal."""
        b_hat = np.zeros((n, n))
        for column, value in enumerate(b):
            b_hat[column_pair(column, n)] = value
        return b_hat

    def solve_penalized(
        self,
        system: LlcSystem,
        penalty: str = Penalty.L1,
        penalty_lambda: float = 0.05,
        tolerance: float = 1e-8,
        max_iter: int = 10000
    ) -> np.ndarray:
        """Minimize ``||T b - t||^2 + lambda * pen(b)`` and return B.

        Lasso scales the squared loss by ``1 / (2 m)`` so its alpha is ``lambda / (2 m)``;
        Ridge uses the unscaled loss. Without a penalty the minimum-norm least-squares
        solution is returned.
        """

        if penalty_lambda < 0:
            raise BadInputError(
                response_message=f"Penalty weight must be nonnegative, got {penalty_lambda}.",
                response_key="error_negative_penalty"
            )
        if penalty not in Penalty.ALL:
            raise BadInputError(
                response_message=f"Unknown penalty '{penalty}', expected one of {list(Penalty.ALL)}.",
                response_key="error_unknown_penalty"
            )

        if not system.n_rows:
            return np.zeros((system.n, system.n))

        t_matrix, t_vector = system.t_matrix, system.t_vector
        if not t_vector.any():
            # B = 0 attains zero loss and zero penalty
            return np.zeros((system.n, system.n))

        if penalty_lambda == 0:
            b = np.linalg.lstsq(t_matrix, t_vector, rcond=None)[0]
            return self.to_matrix(b, system.n)

        if penalty == Penalty.L2:
            model = Ridge(alpha=penalty_lambda, fit_intercept=False, tol=tolerance, max_iter=max_iter)
        else:
            model = Lasso(
                alpha=penalty_lambda / (2.0 * system.n_rows),
                fit_intercept=False,
                tol=tolerance,
                max_iter=max_iter
            )

        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ConvergenceWarning)
            model.fit(t_matrix, t_vector)

        b = np.asarray(model.coef_, dtype=float).ravel()
        if any(issubclass(warning.category, ConvergenceWarning) for warning in caught):
            residual = float(np.linalg.norm(t_matrix @ b - t_vector))
            raise ConvergenceError(
                response_message=f"{penalty} solver did not converge in {max_iter} iterations (residual {residual:.3e}).",
                response_key="error_solver_not_converged",
                residual=residual
            )
        return self.to_matrix(b, system.n)
