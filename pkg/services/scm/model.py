from typing import Any, Iterable

import numpy as np

from abstractions.service import IService

from constants.tolerance import Tolerance

from errors.weak_stability_error import WeakStabilityError

from models.graph import DirectedMixedGraph
from models.scm import Experiment, LinearScm


class LinearScmService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn

    def graph_of(self, scm: LinearScm, tol: float = 0.0) -> DirectedMixedGraph:
        n = scm.n
        return DirectedMixedGraph.from_edges(
            n,
            directed=[(i, u) for u in range(n) for i in range(n) if u != i and abs(scm.b[u, i]) > tol],
            bidirected=[(i, j) for i in range(n) for j in range(i + 1, n) if abs(scm.sigma_e[i, j]) > tol]
        )

    def is_stable_under(self, scm: LinearScm, experiment: Experiment) -> bool:
        system = np.eye(scm.n) - experiment.u_matrix @ scm.b
        return bool(np.linalg.svd(system, compute_uv=False).min() > Tolerance.STABILITY)

    def is_weakly_stable(self, scm: LinearScm, setup: Iterable[Experiment] = ()) -> bool:
        """I - U_k B is invertible for every experiment of the setup and for the null experiment."""
        experiments = [Experiment.of(scm.n)] + list(setup)
        return all(self.is_stable_under(scm, experiment) for experiment in experiments)

    def analytic_covariance(self, scm: LinearScm, experiment: Experiment) -> np.ndarray:
        """Covariance of the manipulated system; intervened values are independent standard normals."""

        if not self.is_stable_under(scm, experiment):
            raise WeakStabilityError(
                response_message=f"I - U B is singular for the experiment intervening on {list(experiment.j)}.",
                response_key="error_not_weakly_stable"
            )

        u_matrix = experiment.u_matrix
        inverse = np.linalg.inv(np.eye(scm.n) - u_matrix @ scm.b)
        source = u_matrix @ scm.sigma_e @ u_matrix.T + experiment.j_matrix @ experiment.j_matrix.T
        covariance = inverse @ source @ inverse.T
        return (covariance + covariance.T) / 2.0
