import os

from typing import Any, List, Optional, Tuple

import pandas as pd

from abstractions.service import IService

from constants.dataset_size import INFINITE, format_size, parse_size

from errors.bad_input_error import BadInputError

from models.scm import Dataset, Experiment, LinearScm

from utilities.files import EXACT_FLOAT_FORMAT, FLOAT_FORMAT, FileUtility


SETUP_FILE = "setup.json"
COHORT_FILE = "scms.json"


class ScmStoreService(IService):
    """On-disk layout of SCM cohorts (JSON) and simulated setups (one CSV and one JSON sidecar per experiment plus setup.json)."""

    def __init__(self, urn: str = None, **kwargs: Any) -> None:
        super().__init__(urn, **kwargs)
        self.urn = urn
        self.file_utility = FileUtility(urn=self.urn)

    def write_cohort(self, scms: List[LinearScm], seed: int, path: str) -> None:
        payload = {"seed": seed, "scms": [dict(scm_id=scm_id, **scm.to_json()) for scm_id, scm in enumerate(scms)]}
        self.file_utility.write_json(payload, path)

    def read_scm(self, path: str, scm_id: Optional[int] = None) -> Tuple[int, LinearScm]:
        """A single SCM file, or entry ``scm_id`` (default 0) of a cohort file."""

        payload = self.file_utility.read_json(path)
        if "scms" not in payload:
            return scm_id or 0, LinearScm.from_json(payload)

        scm_id = scm_id or 0
        entries = {entry.get("scm_id", index): entry for index, entry in enumerate(payload["scms"])}
        if scm_id not in entries:
            raise BadInputError(
                response_message=f"SCM {scm_id} is not in {path}; it holds ids {sorted(entries)}.",
                response_key="error_unknown_scm_id"
            )
        return scm_id, LinearScm.from_json(entries[scm_id])

    def write_setup(self, datasets: List[Dataset], setup_id: int, size: Optional[int], out_dir: str) -> str:

        self.file_utility.ensure_directory(out_dir)
        experiments = []
        for index, dataset in enumerate(datasets):
            name = f"experiment_{index}.csv"
            sidecar = f"experiment_{index}.json"
            values = dataset.exact if dataset.is_infinite else dataset.samples
            columns = [f"x{node}" for node in range(dataset.experiment.n)]
            self.file_utility.write_csv(
                pd.DataFrame(values, columns=columns),
                os.path.join(out_dir, name),
                float_format=EXACT_FLOAT_FORMAT if dataset.is_infinite else FLOAT_FORMAT
            )
            self.file_utility.write_json(
                {"intervened": list(dataset.experiment.j), "size": INFINITE if dataset.is_infinite else dataset.size},
                os.path.join(out_dir, sidecar)
            )
            experiments.append({"file": name, "sidecar": sidecar})

        path = os.path.join(out_dir, SETUP_FILE)
        self.file_utility.write_json(
            {"setup_id": setup_id, "size": format_size(size), "n": datasets[0].experiment.n, "experiments": experiments},
            path
        )
        return path

    def read_dataset(self, data_dir: str, n: int, size: Optional[int], entry: dict) -> Dataset:
        """One experiment's CSV and its ``{"intervened", "size"}`` sidecar."""

        try:
            sidecar = self.file_utility.read_json(os.path.join(data_dir, entry["sidecar"]))
            intervened = [int(node) for node in sidecar["intervened"]]
            dataset_size = parse_size(sidecar["size"])
        except (KeyError, TypeError, ValueError) as err:
            raise BadInputError(response_message=f"Malformed dataset sidecar in {data_dir}: {err!r}", response_key="error_invalid_dataset_sidecar")

        values = self.file_utility.read_csv(os.path.join(data_dir, entry["file"])).to_numpy(dtype=float)
        expected_rows = n if dataset_size is None else dataset_size
        if dataset_size != size or values.shape[0] != expected_rows:
            raise BadInputError(
                response_message=f"{entry['file']} holds {values.shape[0]} rows, its sidecar declares size {format_size(dataset_size)} and the setup {format_size(size)}.",
                response_key="error_invalid_dataset_sidecar"
            )

        experiment = Experiment.of(n, intervened)
        if dataset_size is None:
            return Dataset(experiment=experiment, exact=values)
        return Dataset(experiment=experiment, samples=values)

    def read_setup(self, data_dir: str) -> Tuple[int, List[Dataset]]:

        manifest = self.file_utility.read_json(os.path.join(data_dir, SETUP_FILE))
        try:
            n = int(manifest["n"])
            size = parse_size(manifest["size"])
            entries = manifest["experiments"]
            setup_id = int(manifest["setup_id"])
        except (KeyError, TypeError, ValueError) as err:
            raise BadInputError(response_message=f"Malformed {SETUP_FILE} in {data_dir}: {err}", response_key="error_invalid_setup_manifest")

        datasets = [self.read_dataset(data_dir, n, size, entry) for entry in entries]
        if not datasets:
            raise BadInputError(response_message=f"No experiments listed in {data_dir}.", response_key="error_invalid_setup_manifest")
        self.logger.debug(f"Read {len(datasets)} datasets of setup {setup_id} from {data_dir}")
        return setup_id, datasets
