from itertools import combinations
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from abstractions.error import IError
from abstractions.service import IService

from errors.bad_input_error import BadInputError

from models.llc import FaithfulnessConstraints
from models.scm import Dataset, Experiment

from services.ci.test import CITestService


RULE_TAG = "faithfulness"


class FaithfulnessService(IService):
    """Extra zero restrictions on B and the noise covariance implied by observed independences."""

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.ci_service = CITestService(urn=self.urn)

    def independence_oracle(self, dataset: Dataset, alpha: float) -> Callable[[int, int, Tuple[int, ...]], bool]:
        """Memoized independence verdicts for one dataset; a test that cannot run counts as dependent."""

        verdicts: Dict[Tuple[int, int, Tuple[int, ...]], bool] = {}

        def independent(i: int, j: int, s: Tuple[int, ...] = ()) -> bool:
            key = (min(i, j), max(i, j), tuple(sorted(s)))
            if key not in verdicts:
                try:
                    verdicts[key] = self.ci_service.is_independent(dataset, key[0], key[1], key[2], alpha)
                except IError as err:
                    self.logger.debug(f"Independence test {key} failed: {err.response_key}")
                    verdicts[key] = False
            return verdicts[key]

        return independent

    def separable(self, independent: Callable, i: int, j: int, n: int) -> bool:
        others = [node for node in range(n) if node not in (i, j)]
        return any(
            independent(i, j, s)
            for size in range(len(others) + 1)
            for s in combinations(others, size)
        )

    def faithfulness_constraints(
        self,
        datasets: Sequence[Dataset],
        alpha_llc: float,
        setup: Optional[Sequence[Experiment]] = None
    ) -> FaithfulnessConstraints:

        if setup is not None and [dataset.experiment for dataset in datasets] != list(setup):
            raise BadInputError(
                response_message="Datasets are not aligned with the setup.",
                response_key="error_datasets_setup_mismatch"
            )
        if not datasets:
            return FaithfulnessConstraints(n=0)

        n = datasets[0].experiment.n
        zero_entries: Dict[Tuple[int, int], tuple] = {}
        sigma_zero = set()

        def mark(u: int, i: int, rule: int, k: int) -> None:
            zero_entries.setdefault((u, i), (RULE_TAG, rule, k))

        for k, dataset in enumerate(datasets):
            experiment = dataset.experiment
            independent = self.independence_oracle(dataset, alpha_llc)
            unintervened = experiment.u

            # rule 1: separable unintervened pair, no edge either way and no confounder
            for i, j in combinations(unintervened, 2):
                if self.separable(independent, i, j, n):
                    mark(i, j, 1, k)
                    mark(j, i, 1, k)
                    sigma_zero.add((i, j))

            for i in experiment.j:
                # rule 2: intervened i separable from u, so i is not a direct cause of u
                for u in unintervened:
                    if self.separable(independent, i, u, n):
                        mark(u, i, 2, k)

                reached = {u for u in unintervened if not independent(i, u)}
                for u in reached:
                    for v in unintervened:
                        if v == u:
                            continue
                        # rule 3: i reaches u but not v, so u does not cause v
                        if v not in reached:
                            mark(v, u, 3, k)
                        # rule 4: u screens i off from v, so v is neither a cause of nor confounded with u
                        if independent(i, v, (u,)):
                            mark(u, v, 4, k)
                            sigma_zero.add((min(u, v), max(u, v)))

        entries = sorted(zero_entries)
        self.logger.debug(f"Faithfulness rules emitted {len(entries)} rows and {len(sigma_zero)} noise zeros")
        return FaithfulnessConstraints(
            n=n,
            zero_entries=tuple(entries),
            provenance=tuple(zero_entries[entry] for entry in entries),
            sigma_zero_pairs=tuple(sorted(sigma_zero))
        )
