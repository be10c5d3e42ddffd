from typing import Any, List

from abstractions.service import IService

from constants.setups import EXPERIMENTAL_SETUPS, SETUP_NODE_COUNT

from errors.bad_input_error import BadInputError

from models.scm import Experiment


class ExperimentSetupService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn

    def experiment_setup(self, setup_id: int, n_nodes: int = SETUP_NODE_COUNT) -> List[Experiment]:
        """Experiments of a predefined setup, null experiment first."""

        if setup_id not in EXPERIMENTAL_SETUPS:
            raise BadInputError(
                response_message=f"Unknown setup id {setup_id}; valid ids are {sorted(EXPERIMENTAL_SETUPS)}.",
                response_key="error_unknown_setup"
            )
        if n_nodes != SETUP_NODE_COUNT:
            raise BadInputError(
                response_message=f"Predefined setups are defined for {SETUP_NODE_COUNT} nodes, got {n_nodes}.",
                response_key="error_setup_node_count"
            )
        return [Experiment.of(n_nodes, intervened) for intervened in EXPERIMENTAL_SETUPS[setup_id]]

    def stability_experiments(self, n_nodes: int) -> List[Experiment]:
        """Every distinct experiment a model of this size may be run under."""

        if n_nodes == SETUP_NODE_COUNT:
            distinct = {tuple(sorted(intervened)) for setup in EXPERIMENTAL_SETUPS.values() for intervened in setup}
        else:
            distinct = {()} | {(node,) for node in range(n_nodes)}
        return [Experiment.of(n_nodes, intervened) for intervened in sorted(distinct, key=lambda item: (len(item), item))]
