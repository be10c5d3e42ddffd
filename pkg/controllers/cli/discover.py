import os

from argparse import Namespace
from dataclasses import replace

from abstractions.controller import IController

from configurations.run import RunConfiguration

from constants.api_lk import APILK
from constants.method import Method
from constants.separation_mode import SeparationMode

from errors.bad_input_error import BadInputError

from services.llc.discover import LlcDiscoveryService
from services.scm.store import ScmStoreService
from services.search.discover import AspDiscoveryService
from services.search.minimize import LossMinimizationService

from utilities.files import FileUtility
from utilities.random import RandomStream, RandomUtility


class DiscoverController(IController):

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn, APILK.DISCOVER)

    def validate_request(self, arguments: Namespace) -> None:
        super().validate_request(arguments)
        if arguments.method not in Method.ALL:
            raise BadInputError(
                response_message=f"Unknown method '{arguments.method}'; valid methods are {list(Method.ALL)}.",
                response_key="error_unknown_method"
            )

    def run(self, arguments: Namespace) -> dict:

        run_configuration = RunConfiguration(arguments.config)
        setup_id, datasets = ScmStoreService(urn=self.urn, api_name=self.api_name).read_setup(arguments.data)
        if arguments.setup is not None and arguments.setup != setup_id:
            raise BadInputError(
                response_message=f"--setup {arguments.setup} does not match setup {setup_id} stored in {arguments.data}.",
                response_key="error_setup_mismatch"
            )
        setup = [dataset.experiment for dataset in datasets]
        rng = RandomUtility(seed=arguments.seed or 0, urn=self.urn).generator(RandomStream.BOOTSTRAP)
        file_utility = FileUtility(urn=self.urn)
        out_dir = file_utility.ensure_directory(arguments.out or arguments.data)

        self.logger.debug(f"Running {arguments.method} on setup {setup_id}")
        response_payload = {"setup_id": setup_id, "method": arguments.method}
        if arguments.method in Method.LLC:
            llc_config = replace(run_configuration.llc_config(), use_faithfulness=arguments.method == Method.LLC_F)
            table = LlcDiscoveryService(urn=self.urn, api_name=self.api_name).llc_discover(datasets, setup, llc_config, rng)
        else:
            mode = SeparationMode.SIGMA_SEP if arguments.method == Method.ASP_S else SeparationMode.D_SEP
            search_config = replace(run_configuration.search_config(), mode=mode)
            asp_service = AspDiscoveryService(urn=self.urn, api_name=self.api_name)
            max_cond = run_configuration.ci_config().max_cond
            table, uncertified = asp_service.score_features(datasets, setup, search_config, max_cond, rng=rng)
            response_payload["n_uncertified"] = uncertified

            if arguments.trace:
                constraints = asp_service.build_constraints(datasets, setup, search_config, max_cond)
                result = LossMinimizationService(urn=self.urn, api_name=self.api_name).minimize_loss(
                    constraints, setup, search_config, rng=rng, trace=True
                )
                trace_path = os.path.join(out_dir, f"trace_{arguments.method}.jsonl")
                file_utility.write_jsonl(result.trace, trace_path)
                response_payload["trace"] = trace_path
        self.logger.debug(f"Finished {arguments.method} on setup {setup_id}")

        path = os.path.join(out_dir, f"scores_{arguments.method}.csv")
        file_utility.write_csv(table.to_frame(), path)
        response_payload["scores"] = path
        return response_payload
