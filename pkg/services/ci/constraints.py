from itertools import combinations
from typing import Any, Iterator, List, Optional, Sequence, Tuple

from abstractions.error import IError
from abstractions.service import IService

from constants.constraint_kind import ConstraintKind

from errors.bad_input_error import BadInputError

from models.constraint import CiConstraint, ConstraintSet
from models.graph import SeparationQuery
from models.scm import Dataset, Experiment, LinearScm

from services.ci.test import CITestService
from services.scm.model import LinearScmService

from utilities.graph import GraphUtility
from utilities.separation import SeparationUtility


def constraint_queries(n: int, max_cond: Optional[int] = None) -> Iterator[Tuple[int, int, Tuple[int, ...]]]:
    """Every ``(i, j, s)`` with i < j and s a subset of the other nodes of size at most ``max_cond``."""
    max_cond = n - 2 if max_cond is None else max_cond
    for i, j in combinations(range(n), 2):
        others = [node for node in range(n) if node not in (i, j)]
        for size in range(min(max_cond, len(others)) + 1):
            for s in combinations(others, size):
                yield i, j, s


class ConstraintService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.ci_service = CITestService(urn=self.urn)
        self.scm_service = LinearScmService(urn=self.urn)
        self.graph_utility = GraphUtility(urn=self.urn)
        self.separation_utility = SeparationUtility(urn=self.urn)

    def enumerate_constraints(self, datasets: Sequence[Dataset], alpha: float, max_cond: Optional[int] = None) -> ConstraintSet:
        """Test every pair and conditioning set in every dataset and weight the verdicts."""

        if not datasets:
            return ConstraintSet(constraints=(), alpha=alpha)
        if any(dataset.is_infinite for dataset in datasets):
            raise BadInputError(
                response_message="Constraint enumeration needs finite-sample datasets.",
                response_key="error_enumerate_exact_covariance"
            )

        self.logger.debug(f"Enumerating constraints over {len(datasets)} datasets")
        constraints: List[CiConstraint] = []
        skipped = 0
        for index, dataset in enumerate(datasets):
            for i, j, s in constraint_queries(dataset.experiment.n, max_cond):
                try:
                    p_value, independent = self.ci_service.ci_test(dataset, i, j, s, alpha)
                except IError as err:
                    skipped += 1
                    self.logger.debug(f"Skipping constraint ({i}, {j} | {list(s)}) in experiment {index}: {err.response_key}")
                    continue
                constraints.append(
                    CiConstraint(
                        experiment_index=index,
                        i=i,
                        j=j,
                        s=s,
                        kind=ConstraintKind.INDEPENDENT if independent else ConstraintKind.DEPENDENT,
                        weight=self.ci_service.constraint_weight(p_value, alpha),
                        p_value=p_value
                    )
                )

        if skipped:
            self.logger.warning(f"Skipped {skipped} constraints whose tests failed")
        self.logger.debug(f"Enumerated {len(constraints)} constraints")
        return ConstraintSet(constraints=tuple(constraints), alpha=alpha)

    def oracle_constraints(self, scm: LinearScm, setup: Sequence[Experiment], max_cond: Optional[int] = None) -> ConstraintSet:
        """Ground-truth (in)dependences from d-separation in each manipulated graph, all with weight one."""

        graph = self.scm_service.graph_of(scm)
        constraints: List[CiConstraint] = []
        for index, experiment in enumerate(setup):
            manipulated = self.graph_utility.intervene_graph(graph, experiment.j)
            for i, j, s in constraint_queries(scm.n, max_cond):
                separated = self.separation_utility.d_separated(manipulated, SeparationQuery(x=i, y=j, c=frozenset(s)))
                constraints.append(
                    CiConstraint(
                        experiment_index=index,
                        i=i,
                        j=j,
                        s=s,
                        kind=ConstraintKind.INDEPENDENT if separated else ConstraintKind.DEPENDENT,
                        weight=1.0
                    )
                )
        return ConstraintSet(constraints=tuple(constraints), alpha=None)

    def covariance_constraints(self, datasets: Sequence[Dataset], max_cond: Optional[int] = None) -> ConstraintSet:
        """Weight-one constraints read off exact covariances through vanishing partial correlations."""

        constraints: List[CiConstraint] = []
        for index, dataset in enumerate(datasets):
            if not dataset.is_infinite:
                raise BadInputError(
                    response_message="Exact constraints need exact-covariance datasets.",
                    response_key="error_exact_constraints_on_samples"
                )
            for i, j, s in constraint_queries(dataset.experiment.n, max_cond):
                independent = self.ci_service.exact_independent(dataset.exact, i, j, s)
                constraints.append(
                    CiConstraint(
                        experiment_index=index,
                        i=i,
                        j=j,
                        s=s,
                        kind=ConstraintKind.INDEPENDENT if independent else ConstraintKind.DEPENDENT,
                        weight=1.0
                    )
                )
        return ConstraintSet(constraints=tuple(constraints), alpha=None)
