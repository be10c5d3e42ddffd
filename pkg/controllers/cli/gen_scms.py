import os

from argparse import Namespace
from dataclasses import asdict

from abstractions.controller import IController

from configurations.run import RunConfiguration

from constants.api_lk import APILK

from services.scm.sample import ScmSamplerService
from services.scm.store import COHORT_FILE, ScmStoreService

from utilities.files import FileUtility
from utilities.random import RandomUtility


class GenScmsController(IController):

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn, APILK.GEN_SCMS)

    def run(self, arguments: Namespace) -> dict:

        seed = arguments.seed
        run_configuration = RunConfiguration(arguments.config)
        scm_config = run_configuration.scm_config()
        count = arguments.count or run_configuration.bench_config(arguments.profile).n_scms

        self.logger.debug(f"Sampling {count} SCMs with seed {seed}")
        random_utility = RandomUtility(seed=seed, urn=self.urn)
        scms = ScmSamplerService(urn=self.urn, api_name=self.api_name).sample_cohort(
            scm_config,
            [random_utility.scm_generator(scm_id) for scm_id in range(count)]
        )
        self.logger.debug(f"Sampled {count} SCMs")

        out_dir = FileUtility(urn=self.urn).ensure_directory(arguments.out or ".")
        path = os.path.join(out_dir, COHORT_FILE)
        ScmStoreService(urn=self.urn, api_name=self.api_name).write_cohort(scms, seed, path)
        return {"path": path, "n_scms": count, "sampler": asdict(scm_config)}
