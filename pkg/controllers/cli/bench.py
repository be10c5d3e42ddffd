import os

from argparse import Namespace
from dataclasses import asdict, replace

from abstractions.controller import IController

from configurations.run import RunConfiguration

from constants.api_lk import APILK
from constants.dataset_size import format_size

from services.bench.report import ReportService
from services.bench.run import BenchmarkService
from services.scm.store import COHORT_FILE, ScmStoreService

from utilities.files import FileUtility


class BenchController(IController):

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn, APILK.BENCH)

    def run(self, arguments: Namespace) -> dict:

        run_configuration = RunConfiguration(arguments.config)
        config = run_configuration.bench_config(arguments.profile)

        overrides = {"seed": arguments.seed}
        if arguments.jobs is not None:
            overrides["jobs"] = arguments.jobs
        if arguments.method:
            overrides["methods"] = list(arguments.method)
        if arguments.setup:
            overrides["setup_ids"] = list(arguments.setup)
        if arguments.size:
            overrides["sizes"] = list(arguments.size)
        if arguments.n_scms is not None:
            overrides["n_scms"] = arguments.n_scms
        config = replace(config, **overrides)

        out_dir = arguments.out or run_configuration.request.out or os.path.join("runs", f"{config.profile}_{config.seed}")
        file_utility = FileUtility(urn=self.urn)
        file_utility.ensure_directory(out_dir)

        result = BenchmarkService(urn=self.urn, api_name=self.api_name).run_benchmark(config)

        self.logger.debug(f"Writing report to {out_dir}")
        paths = ReportService(urn=self.urn, api_name=self.api_name).emit_report(
            result.cells, out_dir, record_runtime=config.record_runtime, n=config.scm.n_nodes
        )
        paths["scms"] = os.path.join(out_dir, COHORT_FILE)
        ScmStoreService(urn=self.urn, api_name=self.api_name).write_cohort(result.scms, config.seed, paths["scms"])

        used_config = asdict(config)
        used_config["sizes"] = [format_size(size) for size in config.sizes]
        paths["config"] = os.path.join(out_dir, "config.json")
        file_utility.write_json(used_config, paths["config"])
        self.logger.debug(f"Wrote report to {out_dir}")

        return {
            "out": out_dir,
            "n_cells": len(result.cells),
            "n_failed": sum(1 for cell in result.cells if cell.failed),
            "files": paths,
        }
