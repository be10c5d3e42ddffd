from itertools import combinations
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from abstractions.service import IService

from errors.bad_input_error import BadInputError

from models.llc import LlcSystem, TotalEffects, column_index
from models.scm import Experiment


class LlcSystemService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn

    def assemble_system(self, effects: Sequence[TotalEffects], setup: Optional[Sequence[Experiment]] = None) -> LlcSystem:
        """One row per experiment, intervened i and unintervened u:

        ``b[u][i] + sum_{j in U, j != u} t(x_i ~> x_j) b[u][j] = t(x_i ~> x_u)``
        """

        if setup is not None and [e.experiment for e in effects] != list(setup):
            raise BadInputError(
                response_message="Total effects are not aligned with the setup.",
                response_key="error_effects_setup_mismatch"
            )
        if not effects:
            raise BadInputError(
                response_message="Cannot assemble a system without experiments.",
                response_key="error_empty_setup"
            )

        n = effects[0].experiment.n
        rows: List[np.ndarray] = []
        targets: List[float] = []
        provenance: List[tuple] = []
        for k, total in enumerate(effects):
            unintervened = total.experiment.u
            for i in total.experiment.j:
                for u in unintervened:
                    row = np.zeros(n * (n - 1))
                    row[column_index(u, i, n)] = 1.0
                    for j in unintervened:
                        if j != u:
                            row[column_index(u, j, n)] = total.get(i, j)
                    rows.append(row)
                    targets.append(total.get(i, u))
                    provenance.append((k, i, u))

        t_matrix = np.vstack(rows) if rows else np.zeros((0, n * (n - 1)))
        return LlcSystem(n=n, t_matrix=t_matrix, t_vector=np.asarray(targets, dtype=float), row_provenance=tuple(provenance))

    def pair_condition(self, setup: Sequence[Experiment]) -> Tuple[bool, List[Tuple[int, int]]]:
        """Every ordered pair ``(i, j)`` needs an experiment intervening on i but not on j."""

        if not setup:
            return True, []
        n = setup[0].n
        covered = {(i, u) for experiment in setup for i in experiment.j for u in experiment.u}
        missing = [(i, j) for i in range(n) for j in range(n) if i != j and (i, j) not in covered]
        return not missing, missing

    def uncovered_pairs(self, setup: Sequence[Experiment]) -> List[Tuple[int, int]]:
        if not setup:
            return []
        n = setup[0].n
        covered = {pair for experiment in setup for pair in combinations(experiment.u, 2)}
        return [pair for pair in combinations(range(n), 2) if pair not in covered]

    def covariance_condition(self, setup: Sequence[Experiment]) -> bool:
        """Every unordered pair is jointly unintervened in some experiment."""
        return not self.uncovered_pairs(setup)
