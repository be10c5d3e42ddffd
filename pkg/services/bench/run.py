import time

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional

import numpy as np

from abstractions.service import IService

from constants.cell_status import CellStatus
from constants.dataset_size import format_size
from constants.method import Method
from constants.separation_mode import SeparationMode
from constants.setups import EXPERIMENTAL_SETUPS

from dtos.configurations.bench import BenchConfigurationDTO
from dtos.responses.cell import CellResultDTO

from errors.bad_input_error import BadInputError

from models.feature import all_features, truth_labels
from models.scm import Dataset, LinearScm

from services.llc.discover import LlcDiscoveryService
from services.scm.model import LinearScmService
from services.scm.sample import ScmSamplerService
from services.scm.setup import ExperimentSetupService
from services.scm.simulate import DataSimulationService
from services.search.confidence import FeatureConfidenceService
from services.search.discover import AspDiscoveryService

from utilities.metrics import MetricsUtility
from utilities.random import RandomUtility


@dataclass
class CellTaskDTO:
    """One (SCM, setup, size) work item; its datasets are shared by all requested methods."""

    scm_id: int
    setup_id: int
    size: Optional[int]
    scm: LinearScm
    config: BenchConfigurationDTO
    urn: Optional[str] = None


@dataclass
class BenchmarkResultDTO:

    cells: List[CellResultDTO]
    scms: List[LinearScm]


def run_cell_task(task: CellTaskDTO) -> List[CellResultDTO]:
    """Worker entry point; module level so process pools can pickle it."""
    return BenchmarkService(urn=task.urn).run_cell(task)


class BenchmarkService(IService):

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.sampler_service = ScmSamplerService(urn=self.urn)
        self.setup_service = ExperimentSetupService(urn=self.urn)
        self.simulation_service = DataSimulationService(urn=self.urn)
        self.scm_service = LinearScmService(urn=self.urn)
        self.llc_service = LlcDiscoveryService(urn=self.urn)
        self.asp_service = AspDiscoveryService(urn=self.urn)
        self.confidence_service = FeatureConfidenceService(urn=self.urn)
        self.metrics_utility = MetricsUtility(urn=self.urn)

    def validate_config(self, config: BenchConfigurationDTO) -> None:

        if config.n_scms < 1 or not config.sizes or not config.setup_ids or not config.methods:
            raise BadInputError(
                response_message="A benchmark needs at least one SCM, size, setup and method.",
                response_key="error_empty_benchmark"
            )
        unknown_setups = [setup_id for setup_id in config.setup_ids if setup_id not in EXPERIMENTAL_SETUPS]
        if unknown_setups:
            raise BadInputError(
                response_message=f"Unknown setup ids {unknown_setups}; valid ids are {sorted(EXPERIMENTAL_SETUPS)}.",
                response_key="error_unknown_setup"
            )
        unknown_methods = [method for method in config.methods if method not in Method.ALL]
        if unknown_methods:
            raise BadInputError(
                response_message=f"Unknown methods {unknown_methods}; valid methods are {list(Method.ALL)}.",
                response_key="error_unknown_method"
            )
        if config.jobs < 1:
            raise BadInputError(response_message="--jobs must be at least 1.", response_key="error_invalid_jobs")
        self.sampler_service.validate_config(config.scm)

    def sample_cohort(self, config: BenchConfigurationDTO) -> List[LinearScm]:
        random_utility = RandomUtility(seed=config.seed, urn=self.urn)
        rngs = [random_utility.scm_generator(scm_id) for scm_id in range(config.n_scms)]
        return self.sampler_service.sample_cohort(config.scm, rngs)

    def simulate_setup(self, scm: LinearScm, setup_id: int, size: Optional[int], rng: np.random.Generator) -> List[Dataset]:
        """One dataset of ``size`` rows per experiment, or exact covariances for the infinite size."""
        setup = self.setup_service.experiment_setup(setup_id, scm.n)
        return [
            self.simulation_service.simulate(scm, experiment, size, RandomUtility.child(rng, index))
            for index, experiment in enumerate(setup)
        ]

    def run_method(
        self,
        method: str,
        datasets: List[Dataset],
        scm: LinearScm,
        config: BenchConfigurationDTO,
        rng: np.random.Generator
    ) -> CellResultDTO:

        setup = [dataset.experiment for dataset in datasets]
        uncertified = 0
        if method in Method.LLC:
            llc_config = replace(config.llc, use_faithfulness=method == Method.LLC_F)
            table = self.llc_service.llc_discover(datasets, setup, llc_config, rng)
            predictions = tuple(score > llc_config.z_threshold for score in table.scores)
        else:
            mode = SeparationMode.SIGMA_SEP if method == Method.ASP_S else SeparationMode.D_SEP
            search_config = replace(config.search, mode=mode)
            table, uncertified = self.asp_service.score_features(datasets, setup, search_config, config.ci.max_cond, scm, rng)
            predictions = self.confidence_service.ensemble_predict(table, search_config.t_asp)

        truth = self.scm_service.graph_of(scm)
        return CellResultDTO(
            scm_id=0,
            setup_id=0,
            size=None,
            method=method,
            scores=list(table.scores),
            predictions=[bool(value) for value in predictions],
            truth=truth_labels(truth),
            accuracy=self.metrics_utility.accuracy(predictions, truth),
            certified=not uncertified,
            n_failed_features=uncertified
        )

    def run_cell(self, task: CellTaskDTO) -> List[CellResultDTO]:

        config = task.config
        rng = RandomUtility(seed=config.seed, urn=self.urn).cell_generator(task.scm_id, task.setup_id, task.size)
        label = f"scm {task.scm_id}, setup {task.setup_id}, size {format_size(task.size)}"
        n_features = len(all_features(task.scm.n))

        try:
            datasets = self.simulate_setup(task.scm, task.setup_id, task.size, RandomUtility.child(rng, 0))
            data_error = None
        except Exception as err:
            self.logger.warning(f"Simulation failed for {label}: {err}")
            datasets, data_error = None, str(err)

        n_rows = 0 if not datasets or task.size is None else task.size * len(datasets)
        results = []
        for index, method in enumerate(config.methods):
            started = time.perf_counter()
            if datasets is None:
                result = None
                error = data_error
            else:
                try:
                    result = self.run_method(method, datasets, task.scm, config, RandomUtility.child(rng, 1, index))
                    error = None
                except Exception as err:
                    self.logger.warning(f"{method} failed on {label}: {err}")
                    result, error = None, str(err)

            if result is None:
                result = CellResultDTO(
                    scm_id=0,
                    setup_id=0,
                    size=None,
                    method=method,
                    certified=False,
                    n_failed_features=n_features,
                    status=CellStatus.FAILED,
                    error=error
                )
            result.scm_id, result.setup_id, result.size = task.scm_id, task.setup_id, task.size
            result.n_rows = n_rows
            result.runtime_s = time.perf_counter() - started
            results.append(result)
        return results

    def tasks(self, config: BenchConfigurationDTO, cohort: List[LinearScm]) -> List[CellTaskDTO]:
        return [
            CellTaskDTO(scm_id=scm_id, setup_id=setup_id, size=size, scm=scm, config=config, urn=self.urn)
            for scm_id, scm in enumerate(cohort)
            for setup_id in config.setup_ids
            for size in config.sizes
        ]

    def run_benchmark(self, config: BenchConfigurationDTO) -> BenchmarkResultDTO:
        """Every (SCM, setup, size, method) cell; results come back in task order whatever the worker count."""

        self.validate_config(config)
        self.logger.debug(f"Sampling {config.n_scms} SCMs with seed {config.seed}")
        cohort = self.sample_cohort(config)
        self.logger.debug(f"Sampled {len(cohort)} SCMs")

        tasks = self.tasks(config, cohort)
        self.logger.info(f"Running {len(tasks) * len(config.methods)} cells on {config.jobs} worker(s)")
        if config.jobs > 1:
            with ProcessPoolExecutor(max_workers=config.jobs) as executor:
                batches = list(executor.map(run_cell_task, tasks))
        else:
            batches = [self.run_cell(task) for task in tasks]

        cells = [cell for batch in batches for cell in batch]
        failed = sum(1 for cell in cells if cell.failed)
        if failed:
            self.logger.warning(f"{failed} of {len(cells)} cells failed")
        self.logger.info(f"Finished {len(cells)} cells")
        return BenchmarkResultDTO(cells=cells, scms=cohort)
