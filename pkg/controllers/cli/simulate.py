from argparse import Namespace

from abstractions.controller import IController

from constants.api_lk import APILK
from constants.dataset_size import format_size

from services.bench.run import BenchmarkService
from services.scm.store import ScmStoreService

from utilities.random import RandomUtility


class SimulateController(IController):

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn, APILK.SIMULATE)

    def run(self, arguments: Namespace) -> dict:

        store_service = ScmStoreService(urn=self.urn, api_name=self.api_name)
        scm_id, scm = store_service.read_scm(arguments.scm, arguments.scm_id)
        size = arguments.size

        # the stream matches the benchmark cell of the same (seed, scm, setup, size)
        rng = RandomUtility(seed=arguments.seed, urn=self.urn).cell_generator(scm_id, arguments.setup, size)
        self.logger.debug(f"Simulating setup {arguments.setup} at size {format_size(size)} for SCM {scm_id}")
        datasets = BenchmarkService(urn=self.urn, api_name=self.api_name).simulate_setup(
            scm, arguments.setup, size, RandomUtility.child(rng, 0)
        )
        self.logger.debug(f"Simulated {len(datasets)} datasets")

        path = store_service.write_setup(datasets, arguments.setup, size, arguments.out or "data")
        return {"manifest": path, "scm_id": scm_id, "setup_id": arguments.setup, "size": format_size(size), "n_experiments": len(datasets)}
